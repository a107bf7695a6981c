#include <doctest.h>

#include <cmath>

#include "tendon/motion.hpp"

using namespace tendon;

namespace {
MotionStyle busy_style() {
    MotionStyle s;
    s.velocity = 8.0;
    s.jerkiness = 4.0;
    s.pause_prob = 0.0;
    return s;
}
}  // namespace

TEST_CASE("step length never exceeds the styled velocity") {
    MotionGenerator gen(busy_style(), {}, 5);
    const double dt = 0.01;
    Vec2 prev = gen.position();
    for (int i = 0; i < 20000; ++i) {
        const Vec2 p = gen.tick(dt);
        CHECK((p - prev).norm() <= 8.0 * dt + 1e-9);
        prev = p;
    }
}

TEST_CASE("waypoints stay inside the bounds") {
    MotionGenerator::Bounds b;
    b.x_min = -3.0; b.x_max = 3.0; b.y_min = -2.0; b.y_max = 2.0;
    MotionGenerator gen(busy_style(), b, 9);
    for (int i = 0; i < 20000; ++i) {
        const Vec2 p = gen.tick(0.01);
        CHECK(p[0] >= b.x_min - 1e-9);
        CHECK(p[0] <= b.x_max + 1e-9);
        CHECK(p[1] >= b.y_min - 1e-9);
        CHECK(p[1] <= b.y_max + 1e-9);
    }
}

TEST_CASE("permanent pauses freeze the trajectory") {
    MotionStyle s = busy_style();
    s.pause_prob = 1.0;
    s.pause_min = s.pause_max = 1000.0;
    MotionGenerator gen(s, {}, 2);
    const Vec2 p0 = gen.tick(0.01);
    for (int i = 0; i < 1000; ++i)
        CHECK((gen.tick(0.01) - p0).norm() == 0.0);
}

TEST_CASE("same seed reproduces the same path") {
    StyleRanges ranges;
    MotionGenerator a(ranges, {}, 77), b(ranges, {}, 77);
    for (int i = 0; i < 5000; ++i)
        CHECK((a.tick(0.01) - b.tick(0.01)).norm() == 0.0);
}

TEST_CASE("the workspace is actually covered") {
    StyleRanges ranges;
    MotionGenerator gen(ranges, {}, 13);
    double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
    for (int i = 0; i < 120000; ++i) {
        const Vec2 p = gen.tick(0.01);
        min_x = std::min(min_x, p[0]);
        max_x = std::max(max_x, p[0]);
        min_y = std::min(min_y, p[1]);
        max_y = std::max(max_y, p[1]);
    }
    CHECK(max_x - min_x > 12.0);
    CHECK(max_y - min_y > 12.0);
}

TEST_CASE("style validation rejects nonsense") {
    MotionStyle s = busy_style();
    s.velocity = -1.0;
    CHECK_THROWS(s.validate());
    s = busy_style();
    s.pause_min = 2.0;
    s.pause_max = 1.0;
    CHECK_THROWS(s.validate());
}
