#pragma once

#include <deque>
#include <functional>

#include "tendon/types.hpp"

namespace tendon {

struct ControllerConfig {
    double lambda = 0.5;       ///< N, deadband threshold
    double beta = 2.0;         ///< mm/s per N of excess force
    double rate = 100.0;       ///< Hz
    int window_len = 100;      ///< command history ticks fed to the predictor
    double velocity_cap = 10.0;   ///< mm/s
    double actuation_range = 63.0;  ///< mm, command clamp
    double dither_amp = 0.0;      ///< mm, common-mode excitation amplitude
    int dither_period = 10;       ///< ticks per dither cycle

    void validate() const;
};

/// Deterministic common-mode excitation superimposed on every emitted
/// command. Equal on all cables, so the tip pose is unaffected; it keeps
/// the command spectrum persistently exciting and dithers the stick-slip
/// band. Zero amplitude disables it.
double command_dither(long tick, double amp, int period_ticks);

/// Measured minus predicted internal tension, componentwise.
inline Vec3 external_force(const Vec3& f_meas, const Vec3& f_int_pred) {
    return f_meas - f_int_pred;
}

/// Deadband-proportional velocity law, applied per cable: zero inside
/// [-lambda, lambda], otherwise -beta * (F - lambda * sign(F)), clamped to
/// the velocity cap. Continuous at the deadband edges and odd.
double deadband_velocity(double f_ext, const ControllerConfig& cfg);

/// lambda = 1.25 x validation mean error.
double select_lambda(double val_mean_error);

/// Feed-forward predictor handle: maps a 3 x window_len command window
/// (column 0 newest, mm) to predicted internal tensions (N). Must throw on
/// failure; the controller then holds position and raises its fault flag.
using PredictorFn = std::function<Vec3(const Eigen::Matrix3Xd&)>;

/// Actuator-space compliance loop: assembles the command window, subtracts
/// the predicted internal tension from the measurement and integrates the
/// deadband velocity law at the control rate. Holds position during the
/// first window_len warm-up ticks.
class ComplianceController {
  public:
    ComplianceController(ControllerConfig cfg, PredictorFn predictor,
                         const Vec3& q_initial);

    ActuatorCommand step(const SensorFrame& frame);

    /// Telemetry from the last step.
    const Vec3& last_f_int() const { return f_int_; }
    const Vec3& last_f_ext() const { return f_ext_; }
    const Vec3& last_velocity() const { return velocity_; }
    const Vec3& command() const { return q_; }
    bool warmed_up() const { return tick_ > cfg_.window_len; }
    bool predictor_fault() const { return predictor_fault_; }
    long tick() const { return tick_; }

  private:
    Eigen::Matrix3Xd assemble_window() const;

    ControllerConfig cfg_;
    PredictorFn predictor_;
    std::deque<Vec3> history_;  ///< newest at front, <= window_len + 1 entries
    Vec3 q_;
    Vec3 f_int_{Vec3::Zero()};
    Vec3 f_ext_{Vec3::Zero()};
    Vec3 velocity_{Vec3::Zero()};
    long tick_ = 0;
    bool predictor_fault_ = false;
};

}  // namespace tendon
