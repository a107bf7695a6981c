#pragma once

#include <string>
#include <vector>

#include "tendon/compliance.hpp"
#include "tendon/config.hpp"
#include "tendon/dataset.hpp"
#include "tendon/explorer.hpp"
#include "tendon/model.hpp"
#include "tendon/tipcal.hpp"
#include "tendon/train.hpp"

namespace tendon {

// Typed views of the config file; missing keys take the documented defaults.
PlantConfig plant_config_from(const Config& cfg);
ExplorerConfig explorer_config_from(const Config& cfg);
TrainConfig train_config_from(const Config& cfg);
ModelSpec model_spec_from(const Config& cfg);

/// Deadband from the config when given, otherwise 1.25x the model's final
/// validation error.
ControllerConfig controller_config_from(const Config& cfg,
                                        const SequenceModel& model);

/// Triangle waves on one cable at the configured speeds; emits
/// tension-vs-time CSV (`speed,t,q1,T1`).
void cmd_rate_statics(const Config& cfg, const std::string& out_csv);

/// Unloaded exploration run; writes the dataset CSV and returns it.
Dataset cmd_collect(const Config& cfg, const std::string& out_csv);

/// Trains per [train]/[model] and writes the checkpoint.
SequenceModel cmd_train(const Config& cfg, const Dataset& dataset,
                        const std::string& out_checkpoint);

struct EvalReport {
    double mean_error;  ///< N
    double lambda;      ///< suggested deadband, N
};
EvalReport cmd_eval(const SequenceModel& model, const Dataset& dataset,
                    int stride = 20);

struct CompareCell {
    std::string model;
    int hidden;
    int window;
    std::uint64_t seed;  ///< ~0 marks the per-cell mean row
    double val_error;    ///< N; NaN when status != ok
    std::string status;  ///< ok / skipped / diverged
};
/// Trains {LSTM, CNN} x {32, 64} x {100, 200} on the same dataset over the
/// configured seeds; emits the grid CSV and returns all rows (means last).
std::vector<CompareCell> cmd_compare(const Config& cfg, const Dataset& dataset,
                                     const std::string& out_csv);

struct ImpulseTrial {
    double magnitude;           ///< target peak cable tension, N
    bool triggered;
    int trigger_tick;           ///< tick index within the trial, -1 if none
    double peak_f_ext;          ///< N on the triggered cable
    double time_to_deadband;    ///< s after trigger; inf if never
    double excess_removed_05;   ///< fraction of (peak - lambda) gone at +0.5 s
};
struct ImpulseReport {
    double lambda;
    std::vector<ImpulseTrial> trials;
    /// Mean |tip contact force| per aligned tick (alignment at trigger).
    std::vector<double> aligned_mean_force;
};
/// Tip-force steps against a stiff virtual block; responses aligned at the
/// tick one cable's |F_ext| first exceeds the deadband.
ImpulseReport cmd_impulse(const Config& cfg, const SequenceModel& model,
                          const std::string& out_csv);

struct InsertReport {
    std::vector<double> thresholds;  ///< N
    /// Seconds above each threshold, one row per insert/retract cycle.
    std::vector<std::vector<double>> duration_above;
    double peak_force_enabled;   ///< N
    double peak_force_disabled;  ///< N, hold-position ablation
    int faulted_cycles;
};
/// Repeated insertion into a curved tube via a scripted insertion axis;
/// emits per-tick contact CSV and the exceedance histogram CSV.
InsertReport cmd_insert(const Config& cfg, const SequenceModel& model,
                        const std::string& out_prefix);

struct CalibrationReport {
    std::vector<CalibTrial> trials;
    AlphaFit fit;
    double alpha_true;
};
CalibrationReport cmd_calibrate(const Config& cfg, const std::string& out_csv);

}  // namespace tendon
