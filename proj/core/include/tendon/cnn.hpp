#pragma once

#include <random>
#include <vector>

#include "tendon/optim.hpp"
#include "tendon/types.hpp"

namespace tendon {

/// Temporal CNN baseline: `layers` 1-D convolutions (stride 1, no padding,
/// ReLU each), global max-pool over time per channel, then a linear
/// 32-neuron layer and the 3-output head. Filter count per layer equals
/// the kernel size.
struct CnnParams {
    int layers = 3;
    int kernel = 32;
    int channels = 32;
    std::vector<Eigen::MatrixXd> w;  ///< per layer: out_ch x (in_ch * kernel)
    std::vector<Eigen::MatrixXd> b;  ///< per layer: out_ch x 1
    Eigen::MatrixXd w_fc1;           ///< 32 x channels
    Eigen::MatrixXd b_fc1;           ///< 32 x 1
    Eigen::MatrixXd w_fc2;           ///< 3 x 32
    Eigen::MatrixXd b_fc2;           ///< 3 x 1

    /// Longest temporal context reachable through the conv stack.
    int receptive_field() const { return layers * (kernel - 1); }
    /// Minimum admissible window length: receptive_field() + 1.
    int min_window() const { return receptive_field() + 1; }

    static CnnParams zeros(int kernel, int layers = 3);
    static CnnParams init(int kernel, std::mt19937_64& rng, int layers = 3);

    std::vector<ParamRef> refs();
    std::vector<ConstParamRef> refs() const;
};

struct CnnLayerCache {
    Eigen::MatrixXd col;  ///< (in_ch * kernel) x (B * t_out)
    Eigen::MatrixXd act;  ///< out_ch x (B * t_out), post-ReLU
    int t_in = 0, t_out = 0;
};

struct CnnCache {
    int batch = 0;
    int window = 0;
    std::vector<CnnLayerCache> layer;
    Eigen::MatrixXi argmax;   ///< channels x B, time index of the pooled max
    Eigen::MatrixXd pooled;   ///< channels x B
    Eigen::MatrixXd z1;       ///< 32 x B
    Eigen::MatrixXd y;        ///< 3 x B
};

/// Forward pass over a batch of windows. `steps` holds one 3 x B matrix per
/// tick, steps[0] oldest (chronological order along the conv axis). Throws
/// if the window is shorter than the receptive field allows.
Eigen::MatrixXd cnn_forward_batch(const CnnParams& p,
                                  const std::vector<Eigen::MatrixXd>& steps,
                                  CnnCache* cache);

/// Single window, columns newest-first as assembled by the controller.
Vec3 cnn_forward(const CnnParams& p, const Eigen::Matrix3Xd& window,
                 CnnCache* cache = nullptr);

/// Backprop through head, pooling and the conv stack; gradients are written
/// into `grads` (zeroed here).
void cnn_backward(const CnnParams& p, const CnnCache& cache,
                  const Eigen::MatrixXd& dy, CnnParams& grads);

}  // namespace tendon
