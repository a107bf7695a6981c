// Acceptance checks, one per invocation: `acceptance <n>` runs criterion n
// and prints a single pass/fail line. `acceptance prepare` trains the
// predictor shared by the contact scenarios (criteria 6 and 7).

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "tendon/checkpoint.hpp"
#include "tendon/compliance.hpp"
#include "tendon/gradcheck.hpp"
#include "tendon/lowpass.hpp"
#include "tendon/lstm.hpp"
#include "tendon/cnn.hpp"
#include "tendon/scenarios.hpp"
#include "tendon/tipcal.hpp"
#include "tendon/xyc.hpp"

using namespace tendon;

namespace {

const char* kModelPath = "acceptance_model.json";

int report(int crit, bool pass, const std::string& detail) {
    std::printf("criterion %d: %s (%s)\n", crit, pass ? "PASS" : "FAIL",
                detail.c_str());
    return pass ? 0 : 1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset standard_dataset(double duration_s) {
    Config cfg = Config::from_string(default_config_text());
    cfg.set("explorer", "duration_s", std::to_string(duration_s));
    Plant plant(plant_config_from(cfg));
    return collect(plant, explorer_config_from(cfg));
}

SequenceModel train_shared_model(const Dataset& d) {
    ModelSpec spec;
    spec.kind = ModelKind::kLstm;
    spec.hidden = 32;
    spec.window_len = 100;
    TrainConfig tc;
    tc.epochs = 60;
    tc.batches_per_epoch = 400;
    tc.rng_seed = 5;
    return train(spec, d, tc);
}

SequenceModel shared_model() {
    try {
        return load_checkpoint(kModelPath);
    } catch (const std::exception&) {
        SequenceModel m = train_shared_model(standard_dataset(600.0));
        save_checkpoint(m, kModelPath);
        return m;
    }
}

/// Scenario config with measurement noise disabled.
Config quiet_config() {
    Config cfg = Config::from_string(default_config_text());
    cfg.set("plant", "noise_std", "0");
    return cfg;
}

int criterion_exactness() {
    const double tol = 1e-12;
    bool ok = std::abs(255.0 / 256.0 + 1.0 / 256.0 - 1.0) <= tol;
    ok = ok && std::abs(lowpass_update(0.0, 256.0) - 1.0) <= tol;
    double y = 0.0;
    for (int i = 0; i < 256; ++i) y = lowpass_update(y, 1.0);
    ok = ok && std::abs(y - (1.0 - std::pow(255.0 / 256.0, 256))) <= tol;

    const double s = std::sqrt(3.0) / 2.0;
    Eigen::Matrix3d a;
    a << 0.0, -s, s, 1.0, -0.5, -0.5, 1.0, 1.0, 1.0;
    ok = ok && (xyc_matrix() - a).cwiseAbs().maxCoeff() <= tol;
    ok = ok &&
         (tip_projection() - a.topRows<2>()).cwiseAbs().maxCoeff() <= tol;

    const XycPoint ex = q_to_xyc(Vec3(1.0, 0.0, 0.0));
    ok = ok && std::abs(ex.x) <= tol && std::abs(ex.y - 1.0) <= tol &&
         std::abs(ex.c - 1.0) <= tol;
    const XycPoint ex2 = q_to_xyc(Vec3(0.0, 1.0, 0.0));
    ok = ok && std::abs(ex2.x + s) <= tol && std::abs(ex2.y + 0.5) <= tol &&
         std::abs(ex2.c - 1.0) <= tol;
    const TipForce tf = tip_force(Vec3(0.0, 0.0, 2.0), 1.0 / 3.0);
    ok = ok && std::abs(tf.fx - std::sqrt(3.0) / 6.0) <= tol &&
         std::abs(tf.fy + 1.0 / 6.0) <= tol;

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-60.0, 60.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 q(u(rng), u(rng), u(rng));
        worst = std::max(worst,
                         (xyc_to_q(q_to_xyc(q)) - q).cwiseAbs().maxCoeff());
    }
    ok = ok && worst <= tol;
    char buf[64];
    std::snprintf(buf, sizeof buf, "round-trip max %.2e", worst);
    return report(1, ok, buf);
}

int criterion_gradients() {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> nd(0.0, 1.0);
        const int window = 10, batch = 4;
        std::vector<Eigen::MatrixXd> steps(window, Eigen::MatrixXd(3, batch));
        Eigen::MatrixXd tgt(3, batch);
        for (auto& st : steps)
            st = st.unaryExpr([&](double) { return nd(rng); });
        tgt = tgt.unaryExpr([&](double) { return nd(rng); });

        {
            LstmParams p = LstmParams::init(8, rng);
            auto loss = [&]() {
                Eigen::MatrixXd y = lstm_forward_batch(p, steps, nullptr);
                return (y - tgt).squaredNorm() / (3.0 * batch);
            };
            LstmCache cache;
            const Eigen::MatrixXd y = lstm_forward_batch(p, steps, &cache);
            const Eigen::MatrixXd dy = (2.0 / (3.0 * batch)) * (y - tgt);
            LstmParams grads;
            lstm_backward(p, cache, dy, grads);
            auto params = p.refs();
            const auto numeric = finite_diff_grad(loss, params, 1e-5);
            std::vector<ConstParamRef> analytic;
            for (auto& r : grads.refs()) analytic.push_back({r.name, r.mat});
            worst = std::max(worst, max_relative_error(analytic, numeric));
        }
        {
            CnnParams p = CnnParams::init(4, rng);  // receptive field 9
            auto loss = [&]() {
                Eigen::MatrixXd y = cnn_forward_batch(p, steps, nullptr);
                return (y - tgt).squaredNorm() / (3.0 * batch);
            };
            CnnCache cache;
            const Eigen::MatrixXd y = cnn_forward_batch(p, steps, &cache);
            const Eigen::MatrixXd dy = (2.0 / (3.0 * batch)) * (y - tgt);
            CnnParams grads;
            cnn_backward(p, cache, dy, grads);
            auto params = p.refs();
            const auto numeric = finite_diff_grad(loss, params, 1e-5);
            std::vector<ConstParamRef> analytic;
            for (auto& r : grads.refs()) analytic.push_back({r.name, r.mat});
            worst = std::max(worst, max_relative_error(analytic, numeric));
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "max relative error %.2e", worst);
    return report(2, worst < 1e-4, buf);
}

/// Validation error at the best epoch (early-stopping checkpoint
/// selection); the per-epoch trace is noisy enough that the last epoch
/// alone is a poor estimate of the trained model.
double best_val_error(const SequenceModel& m) {
    double best = m.history.front().val_error;
    for (const auto& e : m.history) best = std::min(best, e.val_error);
    return best;
}

double mean_best_error(const ModelSpec& spec, const Dataset& d,
                       int epochs, int batches) {
    double sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        TrainConfig tc;
        tc.epochs = epochs;
        tc.batches_per_epoch = batches;
        tc.eval_stride = 50;
        tc.rng_seed = seed;
        sum += best_val_error(train(spec, d, tc));
    }
    return sum / 3.0;
}

int criterion_trends() {
    const Dataset d = standard_dataset(1200.0);  // 120k records
    const double lstm_100 =
        mean_best_error({ModelKind::kLstm, 64, 100}, d, 40, 300);
    const double lstm_200 =
        mean_best_error({ModelKind::kLstm, 64, 200}, d, 40, 300);
    const double cnn_200 =
        mean_best_error({ModelKind::kCnn, 64, 200}, d, 16, 200);
    const bool ok = lstm_200 <= lstm_100 && lstm_200 <= cnn_200;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "LSTM-64 n=200 %.3f N vs n=100 %.3f N vs CNN-64 n=200 %.3f N",
                  lstm_200, lstm_100, cnn_200);
    return report(3, ok, buf);
}

int criterion_error_floor() {
    const Dataset d = standard_dataset(1200.0);
    const auto [train_split, val_split] = split(d, 0.8);
    ModelSpec spec{ModelKind::kLstm, 32, 100};
    TrainConfig tc;
    tc.epochs = 60;
    tc.batches_per_epoch = 1500;
    tc.eval_stride = 50;
    tc.rng_seed = 5;
    const SequenceModel m = train(spec, d, tc);
    const double err = best_val_error(m);
    const double bound = 0.15 * tension_stddev(val_split);
    char buf[96];
    std::snprintf(buf, sizeof buf, "val error %.3f N, bound %.3f N", err,
                  bound);
    return report(4, err < bound, buf);
}

int criterion_deadband() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uf(-20.0, 20.0);
    std::uniform_real_distribution<double> ul(0.05, 5.0);
    std::uniform_real_distribution<double> ub(0.1, 10.0);
    bool ok = true;
    for (int i = 0; i < 10000 && ok; ++i) {
        ControllerConfig cfg;
        cfg.lambda = ul(rng);
        cfg.beta = ub(rng);
        cfg.velocity_cap = 1e9;
        const double f = uf(rng);

        const double v = deadband_velocity(f, cfg);
        ok = ok && deadband_velocity(-f, cfg) == -v;  // odd
        if (std::abs(f) <= cfg.lambda) {
            ok = ok && v == 0.0;
        } else {
            const double expected =
                -cfg.beta * (f - cfg.lambda * (f > 0 ? 1.0 : -1.0));
            ok = ok && std::abs(v - expected) < 1e-12;
        }
        // Continuity at the deadband edge.
        const double eps = 1e-9;
        ok = ok && std::abs(deadband_velocity(cfg.lambda + eps, cfg)) <
                       cfg.beta * 1e-8;
        ok = ok && deadband_velocity(cfg.lambda, cfg) == 0.0;
    }
    return report(5, ok, "10000 random (F, lambda, beta) samples");
}

int criterion_impulse() {
    const SequenceModel m = shared_model();
    Config cfg = quiet_config();
    const ImpulseReport r = cmd_impulse(cfg, m, "acceptance_impulse.csv");
    bool ok = r.trials.size() == 20;
    int passed = 0;
    double slowest = 0.0, least_removed = 1e9;
    for (const auto& t : r.trials) {
        const bool tp = t.triggered && t.time_to_deadband <= 2.0 &&
                        t.excess_removed_05 >= 0.5;
        if (tp) ++passed;
        if (t.triggered) {
            slowest = std::max(slowest, t.time_to_deadband);
            least_removed = std::min(least_removed, t.excess_removed_05);
        }
        ok = ok && tp;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "%d/20 trials, slowest return %.2f s, min removal %.0f%%",
                  passed, slowest, 100.0 * least_removed);
    return report(6, ok, buf);
}

int criterion_insertion() {
    const SequenceModel m = shared_model();
    Config cfg = quiet_config();
    const InsertReport r = cmd_insert(cfg, m, "acceptance_insert");
    bool monotone = !r.duration_above.empty();
    for (const auto& cycle : r.duration_above)
        for (std::size_t k = 1; k < cycle.size(); ++k)
            monotone = monotone && cycle[k] <= cycle[k - 1] + 1e-12;
    const bool ok = monotone && r.faulted_cycles == 0 &&
                    r.peak_force_enabled < r.peak_force_disabled;
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "peak %.2f N enabled vs %.2f N disabled, %zu cycles",
                  r.peak_force_enabled, r.peak_force_disabled,
                  r.duration_above.size());
    return report(7, ok, buf);
}

int criterion_alpha() {
    Config cfg = Config::from_string(default_config_text());
    const CalibrationReport r = cmd_calibrate(cfg, "acceptance_calibration.csv");
    const double rel = std::abs(r.fit.alpha - r.alpha_true) / r.alpha_true;
    char buf[96];
    std::snprintf(buf, sizeof buf, "alpha %.5f vs %.5f, %.2f%% off",
                  r.fit.alpha, r.alpha_true, 100.0 * rel);
    return report(8, rel < 0.05 && r.trials.size() == 90, buf);
}

int criterion_determinism() {
    Config cfg = Config::from_string(default_config_text());
    cfg.set("explorer", "duration_s", "60");
    cfg.set("train", "epochs", "5");
    cfg.set("model", "window", "50");
    cfg.set("impulse", "trials", "4");
    cfg.set("impulse", "run_s", "2");

    bool ok = true;
    cmd_collect(cfg, "det_a.csv");
    cmd_collect(cfg, "det_b.csv");
    ok = ok && slurp("det_a.csv") == slurp("det_b.csv");

    const Dataset d = read_dataset_csv("det_a.csv");
    const SequenceModel m1 = cmd_train(cfg, d, "det_a.json");
    cmd_train(cfg, d, "det_b.json");
    ok = ok && slurp("det_a.json") == slurp("det_b.json");

    cmd_impulse(cfg, m1, "det_a_imp.csv");
    cmd_impulse(cfg, m1, "det_b_imp.csv");
    ok = ok && slurp("det_a_imp.csv") == slurp("det_b_imp.csv");

    return report(9, ok, "collect, train and impulse byte-compared");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: acceptance <1..9|prepare>\n");
        return 2;
    }
    try {
        if (std::strcmp(argv[1], "prepare") == 0) {
            SequenceModel m = train_shared_model(standard_dataset(600.0));
            save_checkpoint(m, kModelPath);
            std::printf("prepared shared model, val error %.3f N\n",
                        m.history.back().val_error);
            return 0;
        }
        switch (std::atoi(argv[1])) {
            case 1: return criterion_exactness();
            case 2: return criterion_gradients();
            case 3: return criterion_trends();
            case 4: return criterion_error_floor();
            case 5: return criterion_deadband();
            case 6: return criterion_impulse();
            case 7: return criterion_insertion();
            case 8: return criterion_alpha();
            case 9: return criterion_determinism();
            default:
                std::fprintf(stderr, "unknown criterion %s\n", argv[1]);
                return 2;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
