#include "tendon/loess.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tendon/xyc.hpp"

namespace tendon {

void TensionSurface::add_sample(double x, double y, double c) {
    for (auto& s : samples) {
        if (std::abs(s.x - x) <= dedup_tol && std::abs(s.y - y) <= dedup_tol) {
            s = {x, y, c};
            return;
        }
    }
    samples.push_back({x, y, c});
}

LoessResult loess_query(const TensionSurface& s, double x, double y) {
    if (s.samples.empty())
        throw std::runtime_error("loess_query: empty surface");

    const int k = std::min<int>(s.loess_neighbors, static_cast<int>(s.samples.size()));
    std::vector<int> idx(s.samples.size());
    std::iota(idx.begin(), idx.end(), 0);
    auto d2 = [&](int i) {
        const double dx = s.samples[i].x - x;
        const double dy = s.samples[i].y - y;
        return dx * dx + dy * dy;
    };
    std::partial_sort(idx.begin(), idx.begin() + k, idx.end(),
                      [&](int a, int b) { return d2(a) < d2(b); });

    const double dmax = std::sqrt(d2(idx[k - 1]));
    if (dmax == 0.0) {
        // All selected samples sit on the query point.
        double sum = 0.0;
        for (int j = 0; j < k; ++j) sum += s.samples[idx[j]].c;
        return {sum / k, false};
    }

    // Weighted degree-1 fit in coordinates centred on the query point, so
    // the intercept is the fitted value.
    Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
    Eigen::Vector3d atb = Eigen::Vector3d::Zero();
    double wsum = 0.0, wcsum = 0.0;
    for (int j = 0; j < k; ++j) {
        const auto& p = s.samples[idx[j]];
        const double d = std::sqrt(d2(idx[j])) / dmax;
        const double u = 1.0 - d * d * d;
        const double w = u > 0.0 ? u * u * u : 0.0;
        const Eigen::Vector3d row(1.0, p.x - x, p.y - y);
        ata.noalias() += w * row * row.transpose();
        atb.noalias() += w * p.c * row;
        wsum += w;
        wcsum += w * p.c;
    }
    // Nearest sample carries weight 1 even if the k-th ties it at dmax.
    if (wsum == 0.0) {
        const auto& p = s.samples[idx[0]];
        return {p.c, true};
    }

    Eigen::FullPivLU<Eigen::Matrix3d> lu(ata);
    lu.setThreshold(1e-10);
    if (lu.rank() < 3) return {wcsum / wsum, true};
    return {lu.solve(atb)[0], false};
}

SurfaceUpdateResult surface_update(TensionSurface& s, const Vec3& q,
                                   const Vec3& tension,
                                   std::pair<double, double> target_range,
                                   double adjust_step) {
    const auto [lo, hi] = target_range;
    const bool slack = (tension.array() < lo).any();
    const bool tense = (tension.array() > hi).any();
    if (!slack && !tense) {
        const XycPoint p = q_to_xyc(q);
        s.add_sample(p.x, p.y, p.c);
        return {true, 0.0};
    }
    // Slack takes priority when both occur.
    return {false, slack ? adjust_step : -adjust_step};
}

}  // namespace tendon
