#include <doctest.h>

#include <cmath>
#include <random>

#include "tendon/xyc.hpp"

using namespace tendon;

TEST_CASE("q_to_xyc maps the canonical unit commands") {
    const XycPoint a = q_to_xyc(Vec3(1.0, 0.0, 0.0));
    CHECK(a.x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(a.y == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(a.c == doctest::Approx(1.0).epsilon(1e-12));

    const XycPoint b = q_to_xyc(Vec3(0.0, 1.0, 0.0));
    CHECK(b.x == doctest::Approx(-std::sqrt(3.0) / 2.0).epsilon(1e-12));
    CHECK(b.y == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(b.c == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("xyc_to_q inverts the canonical examples") {
    const Vec3 q = xyc_to_q({0.0, 0.0, 3.0});
    CHECK((q - Vec3::Ones()).cwiseAbs().maxCoeff() < 1e-12);

    const Vec3 q2 = xyc_to_q({0.0, 1.0, 1.0});
    CHECK((q2 - Vec3(1.0, 0.0, 0.0)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("round trip identity on 1000 random points") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Vec3 q(u(rng), u(rng), u(rng));
        const XycPoint p = q_to_xyc(q);
        const Vec3 back = xyc_to_q(p);
        worst = std::max(worst, (back - q).cwiseAbs().maxCoeff());
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("matrix entries match the definition") {
    const Eigen::Matrix3d& a = xyc_matrix();
    const double s = std::sqrt(3.0) / 2.0;
    CHECK(a(0, 0) == 0.0);
    CHECK(a(0, 1) == doctest::Approx(-s).epsilon(1e-15));
    CHECK(a(0, 2) == doctest::Approx(s).epsilon(1e-15));
    CHECK(a(1, 0) == 1.0);
    CHECK(a(1, 1) == -0.5);
    CHECK(a(1, 2) == -0.5);
    CHECK(a.row(2).sum() == 3.0);
    CHECK((xyc_matrix_inverse() * a - Eigen::Matrix3d::Identity())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((tip_projection() - a.topRows<2>()).cwiseAbs().maxCoeff() == 0.0);
}
