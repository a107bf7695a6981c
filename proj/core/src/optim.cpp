#include "tendon/optim.hpp"

#include <cmath>
#include <stdexcept>

namespace tendon {

void TrainConfig::validate() const {
    if (learning_rate <= 0.0) throw std::invalid_argument("learning_rate <= 0");
    if (momentum < 0.0 || momentum >= 1.0)
        throw std::invalid_argument("momentum must be in [0, 1)");
    if (batch_size <= 0 || epochs <= 0 || batches_per_epoch <= 0)
        throw std::invalid_argument("batch/epoch counts must be positive");
}

void sgd_momentum_step(std::vector<ParamRef>& params,
                       const std::vector<ParamRef>& grads,
                       std::vector<ParamRef>& velocity,
                       const TrainConfig& cfg) {
    if (params.size() != grads.size() || params.size() != velocity.size())
        throw std::invalid_argument("sgd_momentum_step: ref list size mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        const Eigen::MatrixXd& g = *grads[i].mat;
        if (!g.allFinite())
            throw std::runtime_error("sgd_momentum_step: non-finite gradient in " +
                                     grads[i].name);
        Eigen::MatrixXd& v = *velocity[i].mat;
        Eigen::MatrixXd& p = *params[i].mat;
        if (g.rows() != p.rows() || g.cols() != p.cols())
            throw std::invalid_argument("sgd_momentum_step: shape mismatch in " +
                                        grads[i].name);
        v = cfg.momentum * v + g;
        p -= cfg.learning_rate * v;
    }
}

double clip_gradients(std::vector<ParamRef>& grads, double max_norm) {
    double sq = 0.0;
    for (const auto& g : grads) sq += g.mat->squaredNorm();
    const double norm = std::sqrt(sq);
    if (max_norm > 0.0 && norm > max_norm) {
        const double scale = max_norm / norm;
        for (auto& g : grads) *g.mat *= scale;
    }
    return norm;
}

}  // namespace tendon
