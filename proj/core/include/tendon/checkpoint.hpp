#pragma once

#include <string>

#include "tendon/model.hpp"

namespace tendon {

/// Self-describing JSON container: format/version fields, model kind and
/// hyperparameters, normalization stats, named parameter arrays with
/// shapes, and the training history. Values round-trip exactly.
void save_checkpoint(const SequenceModel& model, const std::string& path);
SequenceModel load_checkpoint(const std::string& path);

}  // namespace tendon
