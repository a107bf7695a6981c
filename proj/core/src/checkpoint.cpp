#include "tendon/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace tendon {

namespace {

using nlohmann::json;

constexpr const char* kFormat = "tendonlab-checkpoint";
constexpr int kVersion = 1;

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

Vec3 vec3_from_json(const json& j) { return Vec3(j.at(0), j.at(1), j.at(2)); }

json matrix_to_json(const std::string& name, const Eigen::MatrixXd& m) {
    json data = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
        for (Eigen::Index r = 0; r < m.rows(); ++r) data.push_back(m(r, c));
    return json{{"name", name},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"data", std::move(data)}};
}

void matrix_from_json(const json& j, const std::string& expect_name,
                      Eigen::MatrixXd& m) {
    if (j.at("name").get<std::string>() != expect_name)
        throw std::runtime_error("checkpoint: parameter order mismatch, wanted " +
                                 expect_name);
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& data = j.at("data");
    if (static_cast<Eigen::Index>(data.size()) != rows * cols)
        throw std::runtime_error("checkpoint: bad data length for " + expect_name);
    m.resize(rows, cols);
    std::size_t i = 0;
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = data.at(i++);
}

}  // namespace

void save_checkpoint(const SequenceModel& model, const std::string& path) {
    json j;
    j["format"] = kFormat;
    j["version"] = kVersion;
    j["kind"] = to_string(model.kind);
    j["window_len"] = model.window_len;
    j["hidden"] = model.hidden;
    j["normalization"] = {{"in_mean", vec3_to_json(model.norm.in_mean)},
                          {"in_std", vec3_to_json(model.norm.in_std)},
                          {"out_mean", vec3_to_json(model.norm.out_mean)},
                          {"out_std", vec3_to_json(model.norm.out_std)}};
    json params = json::array();
    for (const auto& ref : model.refs())
        params.push_back(matrix_to_json(ref.name, *ref.mat));
    j["params"] = std::move(params);
    json hist = json::array();
    for (const auto& e : model.history)
        hist.push_back({{"train_loss", e.train_loss}, {"val_error", e.val_error}});
    j["history"] = std::move(hist);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(1) << "\n";
}

SequenceModel load_checkpoint(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    if (j.at("format").get<std::string>() != kFormat)
        throw std::runtime_error(path + ": not a checkpoint file");
    if (j.at("version").get<int>() != kVersion)
        throw std::runtime_error(path + ": unsupported checkpoint version");

    SequenceModel m;
    m.kind = model_kind_from_string(j.at("kind").get<std::string>());
    m.window_len = j.at("window_len").get<int>();
    m.hidden = j.at("hidden").get<int>();
    const auto& n = j.at("normalization");
    m.norm.in_mean = vec3_from_json(n.at("in_mean"));
    m.norm.in_std = vec3_from_json(n.at("in_std"));
    m.norm.out_mean = vec3_from_json(n.at("out_mean"));
    m.norm.out_std = vec3_from_json(n.at("out_std"));

    if (m.kind == ModelKind::kLstm) {
        m.lstm = LstmParams::zeros(m.hidden);
    } else {
        m.cnn = CnnParams::zeros(m.hidden);
    }
    const auto& params = j.at("params");
    auto refs = m.refs();
    if (params.size() != refs.size())
        throw std::runtime_error(path + ": parameter count mismatch");
    for (std::size_t i = 0; i < refs.size(); ++i)
        matrix_from_json(params.at(i), refs[i].name, *refs[i].mat);

    for (const auto& e : j.at("history"))
        m.history.push_back({e.at("train_loss").get<double>(),
                             e.at("val_error").get<double>()});
    return m;
}

}  // namespace tendon
