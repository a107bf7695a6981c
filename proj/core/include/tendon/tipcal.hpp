#pragma once

#include <vector>

#include "tendon/compliance.hpp"
#include "tendon/plant.hpp"

namespace tendon {

/// Force in the tip plane, N.
struct TipForce {
    double fx{0.0};
    double fy{0.0};
};

/// One weight-application trial: the known tip-plane force (reaction
/// convention: the force the tip exerts back on the load) and the external
/// cable tensions measured while it was applied.
struct CalibTrial {
    Vec2 applied_force{Vec2::Zero()};  ///< N
    Vec3 ext_tensions{Vec3::Zero()};   ///< N
    int pose_id{0};
};

/// Tip-plane force from external cable tensions: (alpha/2) * P * T with P
/// the 2x3 tip projection. Equal tensions map to zero.
TipForce tip_force(const Vec3& tensions, double alpha);

struct AlphaFit {
    double alpha{0.0};
    double rms_residual{0.0};
};

/// Scalar least squares over both planar components jointly:
/// minimizes sum_i ||(alpha/2) P T_i - f_i||^2. Requires at least two
/// trials with nonzero applied force.
AlphaFit fit_alpha(const std::vector<CalibTrial>& trials);

struct CalibrationConfig {
    std::vector<Vec3> poses;        ///< cable positions, mm
    std::vector<double> load_levels;  ///< N of applied tip force per level
    int repetitions = 6;
    double settle_s = 3.0;    ///< unloaded settle before each measurement
    double average_s = 1.0;   ///< measurement averaging span
};

/// Holds each pose, measures the unloaded baseline, applies each load as a
/// tip-plane force in a per-repetition direction, and records the change
/// in filtered tension as the external tension. Trials that fault the
/// plant are discarded.
std::vector<CalibTrial> run_calibration(Plant& plant,
                                        const CalibrationConfig& cfg);

}  // namespace tendon
