#include "tendon/compliance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace tendon {

void ControllerConfig::validate() const {
    if (lambda <= 0.0) throw std::invalid_argument("lambda <= 0");
    if (beta <= 0.0) throw std::invalid_argument("beta <= 0");
    if (rate <= 0.0) throw std::invalid_argument("rate <= 0");
    if (window_len <= 0) throw std::invalid_argument("window_len <= 0");
    if (velocity_cap <= 0.0) throw std::invalid_argument("velocity_cap <= 0");
    if (dither_amp < 0.0) throw std::invalid_argument("dither_amp < 0");
    if (dither_period < 2) throw std::invalid_argument("dither_period < 2");
}

double command_dither(long tick, double amp, int period_ticks) {
    if (amp == 0.0) return 0.0;
    const double phase = static_cast<double>(tick % period_ticks) / period_ticks;
    return amp * std::sin(2.0 * std::numbers::pi * phase);
}

double deadband_velocity(double f_ext, const ControllerConfig& cfg) {
    if (!std::isfinite(f_ext))
        throw std::invalid_argument("deadband_velocity: non-finite input");
    if (f_ext >= -cfg.lambda && f_ext <= cfg.lambda) return 0.0;
    const double sign = f_ext > 0.0 ? 1.0 : -1.0;
    const double v = -cfg.beta * (f_ext - cfg.lambda * sign);
    return std::clamp(v, -cfg.velocity_cap, cfg.velocity_cap);
}

double select_lambda(double val_mean_error) {
    if (val_mean_error <= 0.0)
        throw std::invalid_argument("select_lambda: mean error must be > 0");
    return 1.25 * val_mean_error;
}

ComplianceController::ComplianceController(ControllerConfig cfg,
                                           PredictorFn predictor,
                                           const Vec3& q_initial)
    : cfg_(cfg), predictor_(std::move(predictor)), q_(q_initial) {
    cfg_.validate();
    if (!predictor_) throw std::invalid_argument("controller needs a predictor");
    history_.push_front(q_);
}

Eigen::Matrix3Xd ComplianceController::assemble_window() const {
    // The measurement being explained is the response of the newest command
    // already sent, so the window ends one entry before it, mirroring the
    // training pairs (window of commands, next tick's tension).
    Eigen::Matrix3Xd w(3, cfg_.window_len);
    for (int j = 0; j < cfg_.window_len; ++j)
        w.col(j) = history_[std::min<std::size_t>(j + 1, history_.size() - 1)];
    return w;
}

ActuatorCommand ComplianceController::step(const SensorFrame& frame) {
    ++tick_;
    velocity_.setZero();
    if (tick_ > cfg_.window_len) {
        bool hold = false;
        try {
            f_int_ = predictor_(assemble_window());
            predictor_fault_ = false;
        } catch (const std::exception&) {
            predictor_fault_ = true;
            hold = true;
        }
        if (!hold) {
            f_ext_ = external_force(frame.tension, f_int_);
            const double dt = 1.0 / cfg_.rate;
            for (int i = 0; i < kNumCables; ++i) {
                velocity_[i] = deadband_velocity(f_ext_[i], cfg_);
                q_[i] = std::clamp(q_[i] + velocity_[i] * dt, 0.0,
                                   cfg_.actuation_range);
            }
        }
    }
    Vec3 out = q_ + Vec3::Constant(
        command_dither(tick_, cfg_.dither_amp, cfg_.dither_period));
    for (int i = 0; i < kNumCables; ++i)
        out[i] = std::clamp(out[i], 0.0, cfg_.actuation_range);
    history_.push_front(out);
    if (static_cast<int>(history_.size()) > cfg_.window_len + 1)
        history_.pop_back();
    return ActuatorCommand{out};
}

}  // namespace tendon
