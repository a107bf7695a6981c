#pragma once

#include <array>
#include <random>
#include <vector>

#include "tendon/optim.hpp"
#include "tendon/types.hpp"

namespace tendon {

/// Gate index order used throughout: input, forget, output, modulation.
enum LstmGate { kGateI = 0, kGateF = 1, kGateO = 2, kGateG = 3 };

/// Weights of the single-layer LSTM predictor with a linear
/// hidden -> 32 -> 3 head. Biases are carried on every gate.
struct LstmParams {
    int hidden = 32;
    std::array<Eigen::MatrixXd, 4> w_q;  ///< hidden x 3
    std::array<Eigen::MatrixXd, 4> w_h;  ///< hidden x hidden
    std::array<Eigen::MatrixXd, 4> b;    ///< hidden x 1
    Eigen::MatrixXd w_fc1;               ///< 32 x hidden
    Eigen::MatrixXd b_fc1;               ///< 32 x 1
    Eigen::MatrixXd w_fc2;               ///< 3 x 32
    Eigen::MatrixXd b_fc2;               ///< 3 x 1

    static LstmParams zeros(int hidden);
    /// Uniform +-1/sqrt(fan-in) weights, forget-gate bias 1, other biases 0.
    static LstmParams init(int hidden, std::mt19937_64& rng);

    std::vector<ParamRef> refs();
    std::vector<ConstParamRef> refs() const;
};

/// One unrolled step. Columns of the matrices are batch samples.
/// Inputs x: 3 x B, h_prev/c_prev: hidden x B.
struct LstmStepCache {
    Eigen::MatrixXd x, h_prev, c_prev;
    std::array<Eigen::MatrixXd, 4> gate;  ///< post-nonlinearity i, f, o, g
    Eigen::MatrixXd c, tanh_c, h;
};

struct LstmCache {
    std::vector<LstmStepCache> steps;  ///< oldest -> newest
    Eigen::MatrixXd z1;                ///< 32 x B hidden of the head
    Eigen::MatrixXd y;                 ///< 3 x B output
};

/// Single LSTM cell evaluation: gates i, f, o, modulation g,
/// c = f.*c_prev + i.*g, h = o.*tanh(c). Throws on shape mismatch.
void lstm_cell(const LstmParams& p, const Vec3& q_t,
               const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev,
               Eigen::VectorXd& h_out, Eigen::VectorXd& c_out);

/// Unrolls the cell over a batch of windows from h = c = 0, oldest step
/// first, and applies the linear head. `steps` holds one 3 x B input matrix
/// per time step, steps[0] being the oldest. Returns the 3 x B prediction.
/// Throws on a non-finite activation, naming the step index.
Eigen::MatrixXd lstm_forward_batch(const LstmParams& p,
                                   const std::vector<Eigen::MatrixXd>& steps,
                                   LstmCache* cache);

/// Single window convenience wrapper. `window` is 3 x n with column 0 the
/// newest command (the unroll runs right-to-left over it).
Vec3 lstm_forward(const LstmParams& p, const Eigen::Matrix3Xd& window,
                  LstmCache* cache = nullptr);

/// Full backpropagation through time. `dy` is the loss gradient w.r.t. the
/// 3 x B output; gradients are accumulated into `grads` (zeroed here).
void lstm_backward(const LstmParams& p, const LstmCache& cache,
                   const Eigen::MatrixXd& dy, LstmParams& grads);

}  // namespace tendon
