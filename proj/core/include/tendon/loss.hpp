#pragma once

#include "tendon/types.hpp"

namespace tendon {

/// Mean of the squared componentwise error over the three outputs.
inline double mse_loss(const Vec3& pred, const Vec3& target) {
    return (pred - target).squaredNorm() / 3.0;
}

}  // namespace tendon
