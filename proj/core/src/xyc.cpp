#include "tendon/xyc.hpp"

#include <cmath>

#include <Eigen/LU>

namespace tendon {

namespace {
Eigen::Matrix3d make_matrix() {
    const double s = std::sqrt(3.0) / 2.0;
    Eigen::Matrix3d a;
    a << 0.0, -s, s,
         1.0, -0.5, -0.5,
         1.0, 1.0, 1.0;
    return a;
}
}  // namespace

const Eigen::Matrix3d& xyc_matrix() {
    static const Eigen::Matrix3d a = make_matrix();
    return a;
}

const Eigen::Matrix3d& xyc_matrix_inverse() {
    static const Eigen::Matrix3d inv = xyc_matrix().inverse();
    return inv;
}

const Eigen::Matrix<double, 2, 3>& tip_projection() {
    static const Eigen::Matrix<double, 2, 3> m = xyc_matrix().topRows<2>();
    return m;
}

XycPoint q_to_xyc(const Vec3& q) {
    const Vec3 v = xyc_matrix() * q;
    return {v[0], v[1], v[2]};
}

Vec3 xyc_to_q(const XycPoint& p) {
    return xyc_matrix_inverse() * Vec3(p.x, p.y, p.c);
}

}  // namespace tendon
