#pragma once

#include <cmath>

#include "tendon/types.hpp"

namespace tendon {

/// Per-channel z-score statistics for model inputs (commands, mm) and
/// targets (tensions, N). Fitted on the training split only.
struct Normalizer {
    Vec3 in_mean{Vec3::Zero()}, in_std{Vec3::Ones()};
    Vec3 out_mean{Vec3::Zero()}, out_std{Vec3::Ones()};

    Vec3 normalize_in(const Vec3& q) const {
        return (q - in_mean).cwiseQuotient(in_std);
    }
    Vec3 denormalize_in(const Vec3& z) const {
        return z.cwiseProduct(in_std) + in_mean;
    }
    Vec3 normalize_out(const Vec3& f) const {
        return (f - out_mean).cwiseQuotient(out_std);
    }
    Vec3 denormalize_out(const Vec3& z) const {
        return z.cwiseProduct(out_std) + out_mean;
    }
};

}  // namespace tendon
