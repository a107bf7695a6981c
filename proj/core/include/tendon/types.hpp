#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace tendon {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// Commanded cable positions q at one control tick, millimetres per cable.
struct ActuatorCommand {
    Vec3 q{Vec3::Zero()};
};

/// Filtered per-cable tension measurement at one control tick, newtons.
/// `fault` is raised when any raw sample exceeded the force cap during the
/// tick; the caller decides whether to abort.
struct SensorFrame {
    Vec3 tension{Vec3::Zero()};
    bool fault{false};
};

inline constexpr int kNumCables = 3;

}  // namespace tendon
