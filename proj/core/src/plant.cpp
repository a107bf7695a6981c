#include "tendon/plant.hpp"

#include <algorithm>
#include <cmath>

#include "tendon/lowpass.hpp"
#include "tendon/xyc.hpp"

namespace tendon {

PlantConfig PlantConfig::defaults() {
    PlantConfig cfg;
    cfg.stiffness_curve = {
        {0.0, 2.0},  {10.0, 4.4},  {20.0, 7.6},  {30.0, 11.6},
        {40.0, 16.4}, {50.0, 22.0}, {63.0, 28.0},
    };
    return cfg;
}

void PlantConfig::validate() const {
    if (stiffness_curve.size() < 2)
        throw std::invalid_argument("stiffness_curve needs at least 2 points");
    for (std::size_t i = 1; i < stiffness_curve.size(); ++i) {
        if (stiffness_curve[i].first <= stiffness_curve[i - 1].first)
            throw std::invalid_argument("stiffness_curve abscissae must increase");
        if (stiffness_curve[i].second < stiffness_curve[i - 1].second)
            throw std::invalid_argument("stiffness_curve must be monotone non-decreasing");
    }
    if (hysteresis_width < 0.0) throw std::invalid_argument("hysteresis_width < 0");
    if (hysteresis_blend_mm <= 0.0) throw std::invalid_argument("hysteresis_blend_mm <= 0");
    if (restitution_tau <= 0.0) throw std::invalid_argument("restitution_tau <= 0");
    if (force_cap <= 0.0) throw std::invalid_argument("force_cap <= 0");
    if (control_rate <= 0.0 || sample_rate_fast <= 0.0)
        throw std::invalid_argument("rates must be positive");
    const double ratio = sample_rate_fast / control_rate;
    if (std::abs(ratio - std::round(ratio)) > 1e-9)
        throw std::invalid_argument("control_rate must divide sample_rate_fast");
    if (actuation_range <= 0.0) throw std::invalid_argument("actuation_range <= 0");
    if (coupling_alpha <= 0.0) throw std::invalid_argument("coupling_alpha <= 0");
}

double PlantConfig::stiffness(double extension_mm) const {
    const auto& c = stiffness_curve;
    if (extension_mm <= c.front().first) return c.front().second;
    if (extension_mm >= c.back().first) return c.back().second;
    auto it = std::upper_bound(c.begin(), c.end(), extension_mm,
                               [](double v, const auto& p) { return v < p.first; });
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double t = (extension_mm - lo.first) / (hi.first - lo.first);
    return lo.second + t * (hi.second - lo.second);
}

SensorFrame plant_step(PlantState& state, const PlantConfig& cfg,
                       const ActuatorCommand& cmd, const Vec3& ext_tension,
                       double dt) {
    if (!cmd.q.allFinite() || !ext_tension.allFinite())
        throw std::invalid_argument("plant_step: non-finite command or load");
    if (std::abs(dt * cfg.control_rate - 1.0) > 1e-9)
        throw std::invalid_argument("plant_step: dt must be 1/control_rate");

    const int n_sub = cfg.substeps();
    const double dtf = 1.0 / cfg.sample_rate_fast;
    const double max_dq = cfg.actuator_rate_limit * dtf;
    const double decay = std::exp(-dtf / cfg.restitution_tau);
    std::normal_distribution<double> noise(0.0, cfg.noise_std);

    SensorFrame frame;
    for (int s = 0; s < n_sub; ++s) {
        for (int i = 0; i < kNumCables; ++i) {
            const double target = std::clamp(cmd.q[i], 0.0, cfg.actuation_range);
            double dq = std::clamp(target - state.cable_pos[i], -max_dq, max_dq);
            state.cable_pos[i] += dq;
            const double vel = dq / dtf;
            state.cable_vel[i] = vel;

            // Direction blending of the Coulomb-style offset over travel.
            if (dq != 0.0) {
                const double h_target =
                    cfg.hysteresis_width * (dq > 0.0 ? 1.0 : -1.0);
                const double blend = std::exp(-std::abs(dq) / cfg.hysteresis_blend_mm);
                state.hysteresis_state[i] =
                    h_target + (state.hysteresis_state[i] - h_target) * blend;
            }

            // First-order transient tracking overshoot_gain * velocity;
            // decays back to the static curve after velocity changes.
            const double tr_target = cfg.overshoot_gain * vel;
            state.transient_tension[i] =
                tr_target + (state.transient_tension[i] - tr_target) * decay;

            double raw_int = cfg.stiffness(state.cable_pos[i]) +
                             state.hysteresis_state[i] +
                             state.transient_tension[i] +
                             cfg.viscous_coeff * vel;
            if (cfg.noise_std > 0.0) raw_int += noise(state.rng);
            raw_int = std::max(raw_int, 0.0);

            const double raw = raw_int + ext_tension[i];
            if (raw > cfg.force_cap) frame.fault = true;
            state.filter_state[i] = lowpass_update(state.filter_state[i], raw);
        }
    }
    frame.tension = state.filter_state;
    return frame;
}

Vec2 tip_pose_of(const PlantState& state, const PlantConfig& cfg) {
    return cfg.tip_scale * (tip_projection() * state.cable_pos);
}

Vec3 cable_tension_of_tip_force(const Vec2& tip_force, double alpha) {
    // Inverts the tip-plane projection so the induced tensions reconstruct
    // the reaction force exactly: (alpha/2) P (-4/(3 alpha)) P^T = -I.
    return (-4.0 / (3.0 * alpha)) * (tip_projection().transpose() * tip_force);
}

void TubeGeometry::validate() const {
    if (centerline.size() < 2)
        throw std::invalid_argument("tube centerline needs at least 2 points");
    if (inner_radius <= 0.0) throw std::invalid_argument("inner_radius <= 0");
    if (contact_stiffness < 0.0) throw std::invalid_argument("contact_stiffness < 0");
}

Vec2 nearest_centerline_point(const TubeGeometry& tube, const Vec2& p) {
    double best_d2 = std::numeric_limits<double>::infinity();
    Vec2 best = tube.centerline.front();
    for (std::size_t i = 0; i + 1 < tube.centerline.size(); ++i) {
        const Vec2& a = tube.centerline[i];
        const Vec2& b = tube.centerline[i + 1];
        const Vec2 ab = b - a;
        const double len2 = ab.squaredNorm();
        double t = len2 > 0.0 ? (p - a).dot(ab) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const Vec2 cand = a + t * ab;
        const double d2 = (p - cand).squaredNorm();
        if (d2 < best_d2) {
            best_d2 = d2;
            best = cand;
        }
    }
    return best;
}

Vec2 tube_contact_force(const Vec2& tip, const TubeGeometry& tube) {
    const Vec2 center = nearest_centerline_point(tube, tip);
    const Vec2 d = tip - center;
    const double dist = d.norm();
    const double pen = dist - tube.inner_radius;
    if (pen <= 0.0 || dist == 0.0) return Vec2::Zero();
    return -(tube.contact_stiffness * pen / dist) * d;
}

Vec3 tube_contact(const Vec2& tip, const TubeGeometry& tube, double alpha) {
    const Vec2 f = tube_contact_force(tip, tube);
    if (f.isZero()) return Vec3::Zero();
    return cable_tension_of_tip_force(f, alpha);
}

Plant::Plant(PlantConfig cfg) : cfg_(std::move(cfg)) {
    cfg_.validate();
    state_.rng.seed(cfg_.rng_seed);
    reset(Vec3::Constant(cfg_.actuation_range / 4.0));
}

void Plant::reset(const Vec3& q0) {
    state_.cable_pos = q0.cwiseMax(0.0).cwiseMin(cfg_.actuation_range);
    state_.cable_vel.setZero();
    state_.hysteresis_state.setZero();
    state_.transient_tension.setZero();
    for (int i = 0; i < kNumCables; ++i)
        state_.filter_state[i] = cfg_.stiffness(state_.cable_pos[i]);
}

SensorFrame Plant::step(const ActuatorCommand& cmd, const Vec3& ext_tension) {
    return plant_step(state_, cfg_, cmd, ext_tension, 1.0 / cfg_.control_rate);
}

}  // namespace tendon
