#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace tendon {

/// Named view of one parameter tensor; models expose their parameters as a
/// fixed-order list of these so the optimizer and the finite-difference
/// oracle can walk them generically.
struct ParamRef {
    std::string name;
    Eigen::MatrixXd* mat;
};

struct ConstParamRef {
    std::string name;
    const Eigen::MatrixXd* mat;
};

struct TrainConfig {
    double learning_rate = 0.005;
    double momentum = 0.9;
    int batch_size = 16;
    int epochs = 20;
    int batches_per_epoch = 60;  ///< windows drawn per epoch = this * batch_size
    int eval_stride = 20;        ///< tick stride between validation windows
    double grad_clip_norm = 5.0; ///< global-norm gradient clip, 0 disables
    std::uint64_t rng_seed = 0;

    void validate() const;  ///< throws std::invalid_argument
};

/// Classical (heavy-ball) momentum update, applied in ref order:
///   v <- momentum * v + grad;  theta <- theta - lr * v.
/// `velocity` buffers must mirror the parameter shapes. Throws on
/// non-finite gradients.
void sgd_momentum_step(std::vector<ParamRef>& params,
                       const std::vector<ParamRef>& grads,
                       std::vector<ParamRef>& velocity,
                       const TrainConfig& cfg);

/// Rescales the gradients in place so their joint L2 norm does not exceed
/// `max_norm`; a non-positive max_norm is a no-op. Returns the norm before
/// clipping. Keeps occasional BPTT gradient spikes from catapulting the
/// parameters out of the basin they were converging in.
double clip_gradients(std::vector<ParamRef>& grads, double max_norm);

}  // namespace tendon
