#include "tendon/explorer.hpp"

#include <algorithm>
#include <cmath>

#include "tendon/compliance.hpp"
#include "tendon/xyc.hpp"

namespace tendon {

double safe_pose_mm(const PlantConfig& cfg,
                    std::pair<double, double> target_range) {
    const double want = 0.5 * (target_range.first + target_range.second);
    double lo = 0.0, hi = cfg.actuation_range;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (cfg.stiffness(mid) < want ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

Dataset collect(Plant& plant, const ExplorerConfig& cfg) {
    const PlantConfig& pc = plant.config();
    const double dt = 1.0 / pc.control_rate;
    const auto ticks = static_cast<long>(std::llround(cfg.duration_s * pc.control_rate));
    const int update_every = std::max(
        1, static_cast<int>(std::lround(cfg.surface_update_period_s * pc.control_rate)));

    const double q_safe = safe_pose_mm(pc, cfg.target_range);
    plant.reset(Vec3::Constant(q_safe));

    MotionGenerator gen(cfg.styles, cfg.bounds, cfg.rng_seed);
    TensionSurface surface;
    surface.loess_neighbors = cfg.loess_neighbors;

    double c_current = 3.0 * q_safe;
    double c_bias = 0.0;
    int session = 0;

    Dataset out;
    out.rate = pc.control_rate;
    out.records.reserve(ticks);

    for (long i = 0; i < ticks; ++i) {
        const Vec2 wp = gen.tick(dt);
        double c_base = c_current;
        if (static_cast<int>(surface.samples.size()) >= cfg.surface_min_samples)
            c_base = loess_query(surface, wp[0], wp[1]).c;
        const double c_used = c_base + c_bias;

        Vec3 q = xyc_to_q({wp[0], wp[1], c_used});
        const double dither =
            command_dither(i, cfg.dither_amp, cfg.dither_period);
        for (int k = 0; k < kNumCables; ++k)
            q[k] = std::clamp(q[k], cfg.range_margin,
                              pc.actuation_range - cfg.range_margin) + dither;

        ActuatorCommand cmd{q};
        const SensorFrame frame = plant.step(cmd);
        if (frame.fault) {
            ++session;
            plant.reset(Vec3::Constant(q_safe));
            c_current = 3.0 * q_safe;
            c_bias = 0.0;
            continue;
        }
        out.records.push_back(
            {static_cast<double>(i) * dt, q, frame.tension, session});

        if (i % update_every == 0) {
            const auto res = surface_update(surface, q, frame.tension,
                                            cfg.target_range, cfg.c_adjust_step);
            if (res.recorded) {
                c_current = c_used;
                c_bias *= 0.9;
            } else {
                c_bias += res.c_adjust;
            }
        }
    }
    return out;
}

}  // namespace tendon
