#include <doctest.h>

#include <cmath>
#include <random>

#include "tendon/loess.hpp"
#include "tendon/xyc.hpp"

using namespace tendon;

TEST_CASE("degree-1 fit reproduces an affine surface exactly") {
    TensionSurface s;
    s.dedup_tol = 0.0;
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng), y = u(rng);
        s.add_sample(x, y, 2.0 * x - y + 5.0);
    }
    for (int i = 0; i < 50; ++i) {
        const double x = u(rng), y = u(rng);
        const LoessResult r = loess_query(s, x, y);
        CHECK(r.c == doctest::Approx(2.0 * x - y + 5.0).epsilon(1e-9));
        CHECK_FALSE(r.fallback);
    }
}

TEST_CASE("query near an isolated sample stays within the local spread") {
    TensionSurface s;
    s.loess_neighbors = 5;
    s.add_sample(0.0, 0.0, 10.0);
    s.add_sample(0.1, 0.1, 10.2);
    s.add_sample(-0.1, 0.1, 9.8);
    s.add_sample(100.0, 100.0, 50.0);
    const LoessResult r = loess_query(s, 0.0, 0.05);
    CHECK(r.c > 9.0);
    CHECK(r.c < 11.0);
}

TEST_CASE("querying an empty surface throws") {
    TensionSurface s;
    CHECK_THROWS(loess_query(s, 0.0, 0.0));
}

TEST_CASE("nearby samples replace instead of accumulating") {
    TensionSurface s;
    s.dedup_tol = 0.5;
    s.add_sample(0.0, 0.0, 1.0);
    s.add_sample(0.1, 0.0, 2.0);
    CHECK(s.samples.size() == 1);
    CHECK(s.samples[0].c == 2.0);
    s.add_sample(3.0, 0.0, 4.0);
    CHECK(s.samples.size() == 2);
}

TEST_CASE("surface update records only in-range tensions") {
    TensionSurface s;
    const std::pair<double, double> range{2.0, 12.0};
    const Vec3 q(20.0, 21.0, 22.0);

    SUBCASE("all mid-range records the point") {
        const auto r = surface_update(s, q, Vec3(5.0, 6.0, 7.0), range, 0.2);
        CHECK(r.recorded);
        CHECK(s.samples.size() == 1);
        const XycPoint p = q_to_xyc(q);
        CHECK(s.samples[0].x == doctest::Approx(p.x));
        CHECK(s.samples[0].c == doctest::Approx(p.c));
    }
    SUBCASE("a slack cable raises c") {
        const auto r = surface_update(s, q, Vec3(1.0, 6.0, 7.0), range, 0.2);
        CHECK_FALSE(r.recorded);
        CHECK(r.c_adjust == doctest::Approx(0.2));
        CHECK(s.samples.empty());
    }
    SUBCASE("an over-tense cable lowers c") {
        const auto r = surface_update(s, q, Vec3(5.0, 13.0, 7.0), range, 0.2);
        CHECK_FALSE(r.recorded);
        CHECK(r.c_adjust == doctest::Approx(-0.2));
    }
    SUBCASE("slack takes priority over tense") {
        const auto r = surface_update(s, q, Vec3(1.0, 13.0, 7.0), range, 0.2);
        CHECK(r.c_adjust == doctest::Approx(0.2));
    }
}
