#include "tendon/tipcal.hpp"

#include <cmath>
#include <stdexcept>

#include "tendon/xyc.hpp"

namespace tendon {

TipForce tip_force(const Vec3& tensions, double alpha) {
    if (alpha <= 0.0) throw std::invalid_argument("tip_force: alpha <= 0");
    const Vec2 f = (alpha / 2.0) * (tip_projection() * tensions);
    return {f[0], f[1]};
}

AlphaFit fit_alpha(const std::vector<CalibTrial>& trials) {
    double num = 0.0, den = 0.0;
    int informative = 0;
    for (const auto& t : trials) {
        const Vec2 g = 0.5 * (tip_projection() * t.ext_tensions);
        num += g.dot(t.applied_force);
        den += g.squaredNorm();
        if (t.applied_force.norm() > 0.0) ++informative;
    }
    if (informative < 2)
        throw std::runtime_error(
            "fit_alpha: need at least two trials with nonzero applied force");
    if (den == 0.0)
        throw std::runtime_error("fit_alpha: degenerate trials, no tension signal");
    const double alpha = num / den;

    double ss = 0.0;
    for (const auto& t : trials) {
        const Vec2 g = 0.5 * (tip_projection() * t.ext_tensions);
        ss += (alpha * g - t.applied_force).squaredNorm();
    }
    return {alpha, std::sqrt(ss / static_cast<double>(trials.size()))};
}

std::vector<CalibTrial> run_calibration(Plant& plant,
                                        const CalibrationConfig& cfg) {
    if (cfg.poses.empty() || cfg.load_levels.empty())
        throw std::invalid_argument("run_calibration: empty poses or loads");
    const double rate = plant.config().control_rate;
    const auto settle_ticks = static_cast<long>(cfg.settle_s * rate);
    const auto avg_ticks = static_cast<long>(cfg.average_s * rate);
    const double alpha_true = plant.config().coupling_alpha;

    auto run_ticks = [&](const ActuatorCommand& cmd, const Vec3& ext,
                         long ticks, Vec3* avg) -> bool {
        Vec3 sum = Vec3::Zero();
        for (long i = 0; i < ticks; ++i) {
            const SensorFrame frame = plant.step(cmd, ext);
            if (frame.fault) return false;
            sum += frame.tension;
        }
        if (avg) *avg = sum / static_cast<double>(ticks);
        return true;
    };

    std::vector<CalibTrial> trials;
    for (std::size_t pi = 0; pi < cfg.poses.size(); ++pi) {
        const ActuatorCommand hold{cfg.poses[pi]};
        plant.reset(cfg.poses[pi]);
        Vec3 baseline;
        if (!run_ticks(hold, Vec3::Zero(), settle_ticks, nullptr)) continue;
        if (!run_ticks(hold, Vec3::Zero(), avg_ticks, &baseline)) continue;

        for (double level : cfg.load_levels) {
            for (int rep = 0; rep < cfg.repetitions; ++rep) {
                const double theta =
                    2.0 * M_PI * rep / std::max(1, cfg.repetitions);
                const Vec2 push(level * std::cos(theta),
                                level * std::sin(theta));
                const Vec3 ext = cable_tension_of_tip_force(push, alpha_true);

                Vec3 loaded;
                if (!run_ticks(hold, ext, settle_ticks, nullptr)) continue;
                if (!run_ticks(hold, ext, avg_ticks, &loaded)) continue;
                // Unload and let the filter drain before the next trial.
                run_ticks(hold, Vec3::Zero(), settle_ticks, nullptr);

                CalibTrial trial;
                trial.applied_force = -push;  // reaction convention
                trial.ext_tensions = loaded - baseline;
                trial.pose_id = static_cast<int>(pi);
                trials.push_back(trial);
            }
        }
    }
    return trials;
}

}  // namespace tendon
