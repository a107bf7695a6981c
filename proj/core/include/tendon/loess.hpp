#pragma once

#include <utility>
#include <vector>

#include "tendon/types.hpp"

namespace tendon {

/// Lookup table of safe-tension points (x, y, c) smoothed with locally
/// weighted linear regression on query.
struct TensionSurface {
    struct Sample {
        double x, y, c;
    };
    std::vector<Sample> samples;
    int loess_neighbors = 25;
    int loess_degree = 1;       ///< degree of the local fit (1 implemented)
    double dedup_tol = 0.25;    ///< samples closer than this replace, not append

    void add_sample(double x, double y, double c);
};

struct LoessResult {
    double c{0.0};
    bool fallback{false};  ///< weighted mean used (degenerate local fit)
};

/// Fitted c at (x, y): locally weighted degree-1 regression over the k
/// nearest samples with tricube weights on normalized distance. Reproduces
/// affine surfaces exactly. Throws if the surface is empty.
LoessResult loess_query(const TensionSurface& s, double x, double y);

struct SurfaceUpdateResult {
    bool recorded{false};
    double c_adjust{0.0};  ///< signed change to apply to c when not recorded
};

/// Records (x, y, c) derived from q when all three tensions are within
/// target_range; otherwise returns a c adjustment (raise when slack, lower
/// when tense) and records nothing.
SurfaceUpdateResult surface_update(TensionSurface& s, const Vec3& q,
                                   const Vec3& tension,
                                   std::pair<double, double> target_range,
                                   double adjust_step = 0.2);

}  // namespace tendon
