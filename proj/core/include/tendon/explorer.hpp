#pragma once

#include "tendon/dataset.hpp"
#include "tendon/loess.hpp"
#include "tendon/motion.hpp"
#include "tendon/plant.hpp"

namespace tendon {

struct ExplorerConfig {
    double duration_s = 1200.0;
    std::pair<double, double> target_range{2.0, 12.0};  ///< N, sensing band
    double c_adjust_step = 0.2;            ///< combined-tension step
    MotionGenerator::Bounds bounds{};
    StyleRanges styles{};
    int loess_neighbors = 25;
    int surface_min_samples = 8;           ///< before trusting the surface
    double surface_update_period_s = 0.25;
    double range_margin = 0.5;             ///< mm kept clear of the limits
    double dither_amp = 0.1;               ///< mm, common-mode excitation
    int dither_period = 10;                ///< ticks per dither cycle
    std::uint64_t rng_seed = 7;
};

/// All-equal cable position whose static tension sits mid `target_range`.
double safe_pose_mm(const PlantConfig& cfg,
                    std::pair<double, double> target_range);

/// Drives the plant unloaded through the (x, y, c) parametrization with
/// randomized motion styles, learning the safe-tension surface on the way,
/// and records commands and measured tensions at the control rate. A plant
/// fault closes the session and exploration resumes from a safe pose.
Dataset collect(Plant& plant, const ExplorerConfig& cfg);

}  // namespace tendon
