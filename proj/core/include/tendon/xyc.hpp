#pragma once

#include "tendon/types.hpp"

namespace tendon {

/// Point in the exploration parametrization: a 2-D plane position (x, y)
/// plus the combined-tension coordinate c, all in cable-length units.
struct XycPoint {
    double x{0.0};
    double y{0.0};
    double c{0.0};
};

/// The constant 3x3 map from cable positions (q1, q2, q3) to (x, y, c).
/// Rows 1-2 are the unit vectors from the tip centre to the cable
/// attachment points; row 3 sums the cable positions.
const Eigen::Matrix3d& xyc_matrix();

/// Exact inverse of xyc_matrix(); round-trips to better than 1e-12.
const Eigen::Matrix3d& xyc_matrix_inverse();

/// Rows 1-2 of xyc_matrix(): projects cable space into the tip plane.
const Eigen::Matrix<double, 2, 3>& tip_projection();

XycPoint q_to_xyc(const Vec3& q);
Vec3 xyc_to_q(const XycPoint& p);

}  // namespace tendon
