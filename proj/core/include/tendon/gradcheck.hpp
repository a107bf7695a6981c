#pragma once

#include <functional>
#include <vector>

#include "tendon/optim.hpp"

namespace tendon {

/// Central finite differences, (J(p+eps) - J(p-eps)) / (2 eps) per scalar
/// parameter. `loss` must re-evaluate the objective from the current
/// parameter values; only forward passes are involved, keeping this
/// independent of any analytic backward path. Parameters are restored
/// exactly on return.
std::vector<Eigen::MatrixXd> finite_diff_grad(
    const std::function<double()>& loss, std::vector<ParamRef>& params,
    double eps);

/// Largest relative mismatch between an analytic gradient and its
/// finite-difference counterpart, max |a-b| / max(1e-4, |a|+|b|). The
/// denominator floor keeps central-difference roundoff on near-zero
/// gradients from masquerading as relative error.
double max_relative_error(const std::vector<ConstParamRef>& analytic,
                          const std::vector<Eigen::MatrixXd>& numeric);

}  // namespace tendon
