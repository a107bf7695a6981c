#pragma once

#include <string>
#include <vector>

#include "tendon/cnn.hpp"
#include "tendon/lstm.hpp"
#include "tendon/normalizer.hpp"

namespace tendon {

enum class ModelKind { kLstm, kCnn };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// Per-epoch record of the training history.
struct EpochStats {
    double train_loss;  ///< mean MSE over the epoch, normalized space
    double val_error;   ///< mean absolute per-cable error, N
};

/// Trained (or in-training) tension predictor: parameters, the window
/// length it expects, and the normalization fitted on its training split.
struct SequenceModel {
    ModelKind kind = ModelKind::kLstm;
    int window_len = 100;
    int hidden = 32;  ///< LSTM hidden size, or CNN kernel/filter count
    LstmParams lstm;
    CnnParams cnn;
    Normalizer norm;
    std::vector<EpochStats> history;

    std::vector<ParamRef> refs();
    std::vector<ConstParamRef> refs() const;

    /// Predicted internal tension (N) for a raw command window in mm,
    /// 3 x window_len, column 0 newest.
    Vec3 predict(const Eigen::Matrix3Xd& window_mm) const;

    /// Forward in normalized space; steps[0] oldest, one 3 x B matrix per
    /// tick. Cache pointers may be null when no backward pass follows.
    Eigen::MatrixXd forward_batch(const std::vector<Eigen::MatrixXd>& steps,
                                  LstmCache* lstm_cache,
                                  CnnCache* cnn_cache) const;
};

}  // namespace tendon
