#include "tendon/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace tendon {

std::vector<Eigen::MatrixXd> finite_diff_grad(
    const std::function<double()>& loss, std::vector<ParamRef>& params,
    double eps) {
    if (eps <= 0.0) throw std::invalid_argument("finite_diff_grad: eps <= 0");
    std::vector<Eigen::MatrixXd> grads;
    grads.reserve(params.size());
    for (auto& ref : params) {
        Eigen::MatrixXd g(ref.mat->rows(), ref.mat->cols());
        for (Eigen::Index c = 0; c < ref.mat->cols(); ++c) {
            for (Eigen::Index r = 0; r < ref.mat->rows(); ++r) {
                const double saved = (*ref.mat)(r, c);
                (*ref.mat)(r, c) = saved + eps;
                const double up = loss();
                (*ref.mat)(r, c) = saved - eps;
                const double down = loss();
                (*ref.mat)(r, c) = saved;
                g(r, c) = (up - down) / (2.0 * eps);
            }
        }
        grads.push_back(std::move(g));
    }
    return grads;
}

double max_relative_error(const std::vector<ConstParamRef>& analytic,
                          const std::vector<Eigen::MatrixXd>& numeric) {
    if (analytic.size() != numeric.size())
        throw std::invalid_argument("max_relative_error: list size mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const Eigen::MatrixXd& a = *analytic[i].mat;
        const Eigen::MatrixXd& n = numeric[i];
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            for (Eigen::Index r = 0; r < a.rows(); ++r) {
                const double denom =
                    std::max(1e-4, std::abs(a(r, c)) + std::abs(n(r, c)));
                worst = std::max(worst, std::abs(a(r, c) - n(r, c)) / denom);
            }
        }
    }
    return worst;
}

}  // namespace tendon
