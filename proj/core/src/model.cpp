#include "tendon/model.hpp"

#include <stdexcept>

namespace tendon {

std::string to_string(ModelKind k) {
    return k == ModelKind::kLstm ? "lstm" : "cnn";
}

ModelKind model_kind_from_string(const std::string& s) {
    if (s == "lstm") return ModelKind::kLstm;
    if (s == "cnn") return ModelKind::kCnn;
    throw std::invalid_argument("unknown model kind: " + s);
}

std::vector<ParamRef> SequenceModel::refs() {
    return kind == ModelKind::kLstm ? lstm.refs() : cnn.refs();
}

std::vector<ConstParamRef> SequenceModel::refs() const {
    return kind == ModelKind::kLstm
               ? static_cast<const LstmParams&>(lstm).refs()
               : static_cast<const CnnParams&>(cnn).refs();
}

Vec3 SequenceModel::predict(const Eigen::Matrix3Xd& window_mm) const {
    if (window_mm.cols() != window_len)
        throw std::invalid_argument("predict: window length mismatch");
    Eigen::Matrix3Xd z(3, window_len);
    for (int j = 0; j < window_len; ++j)
        z.col(j) = norm.normalize_in(window_mm.col(j));
    const Vec3 y = kind == ModelKind::kLstm ? lstm_forward(lstm, z)
                                            : cnn_forward(cnn, z);
    return norm.denormalize_out(y);
}

Eigen::MatrixXd SequenceModel::forward_batch(
    const std::vector<Eigen::MatrixXd>& steps, LstmCache* lstm_cache,
    CnnCache* cnn_cache) const {
    return kind == ModelKind::kLstm
               ? lstm_forward_batch(lstm, steps, lstm_cache)
               : cnn_forward_batch(cnn, steps, cnn_cache);
}

}  // namespace tendon
