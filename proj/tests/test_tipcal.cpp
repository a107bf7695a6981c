#include <doctest.h>

#include <cmath>
#include <random>

#include "tendon/plant.hpp"
#include "tendon/tipcal.hpp"

using namespace tendon;

TEST_CASE("tip force reconstruction examples") {
    const TipForce f = tip_force(Vec3(0.0, 0.0, 2.0), 1.0 / 3.0);
    CHECK(f.fx == doctest::Approx(std::sqrt(3.0) / 6.0).epsilon(1e-12));
    CHECK(f.fy == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));

    const TipForce zero = tip_force(Vec3::Constant(4.0), 1.0 / 3.0);
    CHECK(std::abs(zero.fx) < 1e-12);
    CHECK(std::abs(zero.fy) < 1e-12);
}

TEST_CASE("a dollar coin weighs 0.0883 N") {
    CHECK(0.009 * 9.81 == doctest::Approx(0.0883).epsilon(1e-3));
}

TEST_CASE("reconstruction inverts the contact-tension map") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const double alpha = 1.0 / 3.0;
    for (int i = 0; i < 100; ++i) {
        const Vec2 push(u(rng), u(rng));
        const Vec3 t = cable_tension_of_tip_force(push, alpha);
        const TipForce back = tip_force(t, alpha);
        // The measured tensions return the reaction to the push.
        CHECK(back.fx == doctest::Approx(-push[0]).epsilon(1e-9));
        CHECK(back.fy == doctest::Approx(-push[1]).epsilon(1e-9));
    }
}

TEST_CASE("fit_alpha recovers alpha exactly on synthetic trials") {
    std::mt19937_64 rng(32);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double alpha = 0.31;
    std::vector<CalibTrial> trials;
    for (int i = 0; i < 20; ++i) {
        const Vec2 push(u(rng), u(rng));
        CalibTrial t;
        t.applied_force = -push;
        t.ext_tensions = cable_tension_of_tip_force(push, alpha);
        trials.push_back(t);
    }
    const AlphaFit fit = fit_alpha(trials);
    CHECK(fit.alpha == doctest::Approx(alpha).epsilon(1e-9));
    CHECK(fit.rms_residual < 1e-9);
}

TEST_CASE("fit_alpha needs at least two loaded trials") {
    std::vector<CalibTrial> trials(1);
    trials[0].applied_force = Vec2(1.0, 0.0);
    trials[0].ext_tensions = Vec3(0.1, 0.2, 0.3);
    CHECK_THROWS(fit_alpha(trials));
}

TEST_CASE("doubling the load doubles the simulated tip-plane force") {
    PlantConfig pc = PlantConfig::defaults();
    pc.noise_std = 0.0;
    Plant plant(pc);
    CalibrationConfig cfg;
    cfg.poses = {Vec3::Constant(25.0)};
    cfg.load_levels = {0.4, 0.8};
    cfg.repetitions = 3;
    const auto trials = run_calibration(plant, cfg);
    REQUIRE(trials.size() == 6);
    for (int rep = 0; rep < 3; ++rep) {
        const double f1 = trials[rep].applied_force.norm();
        const double f2 = trials[3 + rep].applied_force.norm();
        const double t1 = trials[rep].ext_tensions.norm();
        const double t2 = trials[3 + rep].ext_tensions.norm();
        CHECK(f2 == doctest::Approx(2.0 * f1).epsilon(1e-9));
        CHECK(t2 == doctest::Approx(2.0 * t1).epsilon(0.05));
    }
}

TEST_CASE("unloaded baseline leaves near-zero external tension") {
    PlantConfig pc = PlantConfig::defaults();
    pc.noise_std = 0.0;
    Plant plant(pc);
    CalibrationConfig cfg;
    cfg.poses = {Vec3::Constant(25.0)};
    cfg.load_levels = {1e-9};
    cfg.repetitions = 2;
    const auto trials = run_calibration(plant, cfg);
    REQUIRE(trials.size() == 2);
    for (const auto& t : trials)
        CHECK(t.ext_tensions.cwiseAbs().maxCoeff() < 0.05);
}
