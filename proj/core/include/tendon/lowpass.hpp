#pragma once

namespace tendon {

/// First-order IIR low-pass applied to every raw tension sample before the
/// value reaches the control loop: y[n] = (255/256) y[n-1] + (1/256) x[n].
/// Coefficients sum to exactly 1, so the DC gain is exactly 1.
inline double lowpass_update(double y_prev, double x) {
    return (255.0 / 256.0) * y_prev + (1.0 / 256.0) * x;
}

}  // namespace tendon
