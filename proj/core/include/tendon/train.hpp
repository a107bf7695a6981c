#pragma once

#include <stdexcept>

#include "tendon/dataset.hpp"
#include "tendon/model.hpp"
#include "tendon/optim.hpp"

namespace tendon {

/// Thrown when the training loss goes non-finite.
struct TrainDivergence : std::runtime_error {
    int epoch;
    explicit TrainDivergence(int e)
        : std::runtime_error("training diverged at epoch " + std::to_string(e)),
          epoch(e) {}
};

struct ModelSpec {
    ModelKind kind = ModelKind::kLstm;
    int hidden = 32;      ///< LSTM hidden units, or CNN kernel/filter count
    int window_len = 100;
};

/// Trains a predictor on the dataset: contiguous 80/20 temporal split,
/// z-score normalization from the training split, shuffled random
/// contiguous windows per epoch, SGD with momentum, per-epoch validation
/// mean error in the history. Deterministic given cfg.rng_seed.
SequenceModel train(const ModelSpec& spec, const Dataset& dataset,
                    const TrainConfig& cfg);

/// Mean absolute per-cable prediction error (N) over windows taken at
/// `stride` ticks across the dataset.
double evaluate(const SequenceModel& model, const Dataset& dataset,
                int stride = 20);

/// Per-cable standard deviation of tensions, averaged over the cables.
double tension_stddev(const Dataset& dataset);

}  // namespace tendon
