#include "tendon/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "tendon/checkpoint.hpp"
#include "tendon/xyc.hpp"

namespace tendon {

namespace {

struct CsvFile {
    std::FILE* f;
    explicit CsvFile(const std::string& path) : f(std::fopen(path.c_str(), "w")) {
        if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    }
    ~CsvFile() { std::fclose(f); }
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;
};

std::vector<std::pair<double, double>> parse_curve(const std::string& text) {
    std::vector<std::pair<double, double>> curve;
    std::istringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos)
            throw std::runtime_error("stiffness_curve entries must be ext:force");
        curve.emplace_back(std::stod(item.substr(0, colon)),
                           std::stod(item.substr(colon + 1)));
    }
    return curve;
}

std::pair<double, double> sensing_range_from(const Config& cfg) {
    return {cfg.get_double("explorer", "target_lo", 2.0),
            cfg.get_double("explorer", "target_hi", 12.0)};
}

}  // namespace

std::string default_config_text() {
    return R"(# Tendon lab configuration. Every key is optional; the values below
# are the built-in defaults.

[plant]
stiffness_curve = 0:2, 10:4.4, 20:7.6, 30:11.6, 40:16.4, 50:22, 63:28
hysteresis_width = 0.8
hysteresis_blend_mm = 1.0
overshoot_gain = 0.20
restitution_tau = 1.0
viscous_coeff = 0.15
noise_std = 0.05
actuator_rate_limit = 40
actuation_range = 63
force_cap = 65
sample_rate_fast = 20000
control_rate = 100
tip_scale = 1.0
coupling_alpha = 0.3333333333333333
seed = 1

[explorer]
duration_s = 1200
target_lo = 2
target_hi = 12
c_adjust_step = 0.2
x_min = -12
x_max = 12
y_min = -12
y_max = 12
loess_neighbors = 25
dither_amp = 0.1
dither_period = 10
seed = 7

[model]
kind = lstm
hidden = 32
window = 100

[train]
learning_rate = 0.005
momentum = 0.9
batch_size = 16
epochs = 20
batches_per_epoch = 60
eval_stride = 20
grad_clip_norm = 5.0
seed = 0

[compare]
seeds = 1, 2, 3

[controller]
# lambda = 0.5        # omit to use 1.25x the model's validation error
beta = 2.0
velocity_cap = 10
dither_amp = 0.1
dither_period = 10

[impulse]
trials = 20
contact_stiffness = 2.0
magnitude_lo_lambda = 2.0
magnitude_hi_lambda = 4.0
settle_s = 1.0
run_s = 4.0
seed = 101

[insert]
cycles = 10
speed_mm_s = 29
tube_length_mm = 100
bend_amplitude_mm = 25
inner_radius_mm = 13
contact_stiffness = 1.0
thresholds_N = 0.5, 1, 2, 3, 4, 6, 8

[calibrate]
repetitions = 6
load_levels_N = 0.177, 0.353, 0.530, 0.706, 0.883
pose_tilt_mm = 4.0

[rate_statics]
speeds_mm_s = 1, 2.5, 10
q_lo = 10
q_hi = 30
cycles = 2
)";
}

PlantConfig plant_config_from(const Config& cfg) {
    PlantConfig pc = PlantConfig::defaults();
    const std::string sec = "plant";
    if (cfg.has(sec, "stiffness_curve"))
        pc.stiffness_curve = parse_curve(cfg.get_str(sec, "stiffness_curve", ""));
    pc.hysteresis_width = cfg.get_double(sec, "hysteresis_width", pc.hysteresis_width);
    pc.hysteresis_blend_mm =
        cfg.get_double(sec, "hysteresis_blend_mm", pc.hysteresis_blend_mm);
    pc.overshoot_gain = cfg.get_double(sec, "overshoot_gain", pc.overshoot_gain);
    pc.restitution_tau = cfg.get_double(sec, "restitution_tau", pc.restitution_tau);
    pc.viscous_coeff = cfg.get_double(sec, "viscous_coeff", pc.viscous_coeff);
    pc.noise_std = cfg.get_double(sec, "noise_std", pc.noise_std);
    pc.actuator_rate_limit =
        cfg.get_double(sec, "actuator_rate_limit", pc.actuator_rate_limit);
    pc.actuation_range = cfg.get_double(sec, "actuation_range", pc.actuation_range);
    pc.force_cap = cfg.get_double(sec, "force_cap", pc.force_cap);
    pc.sample_rate_fast = cfg.get_double(sec, "sample_rate_fast", pc.sample_rate_fast);
    pc.control_rate = cfg.get_double(sec, "control_rate", pc.control_rate);
    pc.tip_scale = cfg.get_double(sec, "tip_scale", pc.tip_scale);
    pc.coupling_alpha = cfg.get_double(sec, "coupling_alpha", pc.coupling_alpha);
    pc.rng_seed = static_cast<std::uint64_t>(cfg.get_int(sec, "seed", 1));
    pc.validate();
    return pc;
}

ExplorerConfig explorer_config_from(const Config& cfg) {
    ExplorerConfig ec;
    const std::string sec = "explorer";
    ec.duration_s = cfg.get_double(sec, "duration_s", ec.duration_s);
    ec.target_range = sensing_range_from(cfg);
    ec.c_adjust_step = cfg.get_double(sec, "c_adjust_step", ec.c_adjust_step);
    ec.bounds.x_min = cfg.get_double(sec, "x_min", ec.bounds.x_min);
    ec.bounds.x_max = cfg.get_double(sec, "x_max", ec.bounds.x_max);
    ec.bounds.y_min = cfg.get_double(sec, "y_min", ec.bounds.y_min);
    ec.bounds.y_max = cfg.get_double(sec, "y_max", ec.bounds.y_max);
    ec.loess_neighbors =
        static_cast<int>(cfg.get_int(sec, "loess_neighbors", ec.loess_neighbors));
    ec.dither_amp = cfg.get_double(sec, "dither_amp", ec.dither_amp);
    ec.dither_period =
        static_cast<int>(cfg.get_int(sec, "dither_period", ec.dither_period));
    ec.rng_seed = static_cast<std::uint64_t>(cfg.get_int(sec, "seed", 7));
    return ec;
}

TrainConfig train_config_from(const Config& cfg) {
    TrainConfig tc;
    const std::string sec = "train";
    tc.learning_rate = cfg.get_double(sec, "learning_rate", tc.learning_rate);
    tc.momentum = cfg.get_double(sec, "momentum", tc.momentum);
    tc.batch_size = static_cast<int>(cfg.get_int(sec, "batch_size", tc.batch_size));
    tc.epochs = static_cast<int>(cfg.get_int(sec, "epochs", tc.epochs));
    tc.batches_per_epoch =
        static_cast<int>(cfg.get_int(sec, "batches_per_epoch", tc.batches_per_epoch));
    tc.eval_stride = static_cast<int>(cfg.get_int(sec, "eval_stride", tc.eval_stride));
    tc.grad_clip_norm =
        cfg.get_double(sec, "grad_clip_norm", tc.grad_clip_norm);
    tc.rng_seed = static_cast<std::uint64_t>(cfg.get_int(sec, "seed", 0));
    tc.validate();
    return tc;
}

ModelSpec model_spec_from(const Config& cfg) {
    ModelSpec ms;
    ms.kind = model_kind_from_string(cfg.get_str("model", "kind", "lstm"));
    ms.hidden = static_cast<int>(cfg.get_int("model", "hidden", 32));
    ms.window_len = static_cast<int>(cfg.get_int("model", "window", 100));
    return ms;
}

ControllerConfig controller_config_from(const Config& cfg,
                                        const SequenceModel& model) {
    ControllerConfig cc;
    const std::string sec = "controller";
    if (cfg.has(sec, "lambda")) {
        cc.lambda = cfg.get_double(sec, "lambda", cc.lambda);
    } else {
        if (model.history.empty())
            throw std::runtime_error(
                "controller lambda: no config value and no training history");
        cc.lambda = select_lambda(model.history.back().val_error);
    }
    cc.beta = cfg.get_double(sec, "beta", cc.beta);
    cc.velocity_cap = cfg.get_double(sec, "velocity_cap", cc.velocity_cap);
    cc.dither_amp = cfg.get_double(sec, "dither_amp", 0.1);
    cc.dither_period =
        static_cast<int>(cfg.get_int(sec, "dither_period", cc.dither_period));
    cc.window_len = model.window_len;
    cc.rate = cfg.get_double("plant", "control_rate", cc.rate);
    cc.actuation_range = cfg.get_double("plant", "actuation_range", cc.actuation_range);
    cc.validate();
    return cc;
}

void cmd_rate_statics(const Config& cfg, const std::string& out_csv) {
    const PlantConfig pc = plant_config_from(cfg);
    const std::string sec = "rate_statics";
    const std::vector<double> speeds =
        cfg.get_list(sec, "speeds_mm_s", {1.0, 2.5, 10.0});
    const double q_lo = cfg.get_double(sec, "q_lo", 10.0);
    const double q_hi = cfg.get_double(sec, "q_hi", 30.0);
    const int cycles = static_cast<int>(cfg.get_int(sec, "cycles", 2));

    CsvFile out(out_csv);
    std::fputs("speed_mm_s,t_s,q1_mm,T1_N\n", out.f);
    for (double speed : speeds) {
        Plant plant(pc);
        Vec3 q(q_lo, q_lo, q_lo);
        plant.reset(q);
        // Settle the transient state before the sweep.
        for (int i = 0; i < static_cast<int>(2 * pc.control_rate); ++i)
            plant.step(ActuatorCommand{q});

        const double dt = 1.0 / pc.control_rate;
        const double half_period = (q_hi - q_lo) / speed;
        const auto ticks =
            static_cast<long>(2.0 * half_period * cycles * pc.control_rate);
        double dir = 1.0;
        for (long i = 0; i < ticks; ++i) {
            q[0] += dir * speed * dt;
            if (q[0] >= q_hi) { q[0] = q_hi; dir = -1.0; }
            if (q[0] <= q_lo) { q[0] = q_lo; dir = 1.0; }
            const SensorFrame frame = plant.step(ActuatorCommand{q});
            if (frame.fault)
                throw std::runtime_error("rate-statics: force cap exceeded");
            std::fprintf(out.f, "%.9g,%.9g,%.9g,%.9g\n", speed,
                         static_cast<double>(i) * dt, q[0], frame.tension[0]);
        }
    }
}

Dataset cmd_collect(const Config& cfg, const std::string& out_csv) {
    const PlantConfig pc = plant_config_from(cfg);
    const ExplorerConfig ec = explorer_config_from(cfg);
    Plant plant(pc);
    Dataset d = collect(plant, ec);
    write_dataset_csv(d, out_csv);
    return d;
}

SequenceModel cmd_train(const Config& cfg, const Dataset& dataset,
                        const std::string& out_checkpoint) {
    const ModelSpec spec = model_spec_from(cfg);
    const TrainConfig tc = train_config_from(cfg);
    SequenceModel model = train(spec, dataset, tc);
    save_checkpoint(model, out_checkpoint);
    return model;
}

EvalReport cmd_eval(const SequenceModel& model, const Dataset& dataset,
                    int stride) {
    const double err = evaluate(model, dataset, stride);
    return {err, select_lambda(err)};
}

std::vector<CompareCell> cmd_compare(const Config& cfg, const Dataset& dataset,
                                     const std::string& out_csv) {
    TrainConfig tc = train_config_from(cfg);
    std::vector<double> seed_list =
        cfg.get_list("compare", "seeds", {1.0, 2.0, 3.0});

    std::vector<CompareCell> cells;
    const ModelKind kinds[] = {ModelKind::kLstm, ModelKind::kCnn};
    const int sizes[] = {32, 64};
    const int windows[] = {100, 200};
    for (ModelKind kind : kinds) {
        for (int hidden : sizes) {
            for (int window : windows) {
                double sum = 0.0;
                int ok = 0;
                for (double seed_d : seed_list) {
                    const auto seed = static_cast<std::uint64_t>(seed_d);
                    CompareCell cell{to_string(kind), hidden, window, seed,
                                     std::numeric_limits<double>::quiet_NaN(),
                                     "ok"};
                    const ModelSpec spec{kind, hidden, window};
                    if (kind == ModelKind::kCnn && window < 3 * (hidden - 1) + 1) {
                        cell.status = "skipped: window shorter than receptive field";
                    } else {
                        tc.rng_seed = seed;
                        try {
                            const SequenceModel m = train(spec, dataset, tc);
                            cell.val_error = m.history.back().val_error;
                            sum += cell.val_error;
                            ++ok;
                        } catch (const TrainDivergence& e) {
                            cell.status = std::string("diverged: ") + e.what();
                        }
                    }
                    cells.push_back(cell);
                }
                cells.push_back({to_string(kind), hidden, window,
                                 ~std::uint64_t{0},
                                 ok > 0 ? sum / ok
                                        : std::numeric_limits<double>::quiet_NaN(),
                                 ok > 0 ? "mean" : "mean: no valid cells"});
            }
        }
    }

    CsvFile out(out_csv);
    std::fputs("model,hidden,window,seed,val_error_N,status\n", out.f);
    for (const auto& c : cells) {
        if (c.seed == ~std::uint64_t{0})
            std::fprintf(out.f, "%s,%d,%d,mean,%.9g,%s\n", c.model.c_str(),
                         c.hidden, c.window, c.val_error, c.status.c_str());
        else
            std::fprintf(out.f, "%s,%d,%d,%llu,%.9g,%s\n", c.model.c_str(),
                         c.hidden, c.window,
                         static_cast<unsigned long long>(c.seed), c.val_error,
                         c.status.c_str());
    }
    return cells;
}

namespace {

struct ClosedLoop {
    Plant plant;
    ComplianceController controller;
    ActuatorCommand cmd;

    ClosedLoop(const PlantConfig& pc, const ControllerConfig& cc,
               const SequenceModel& model, double q0)
        : plant(pc),
          controller(cc, [&model](const Eigen::Matrix3Xd& w) {
              return model.predict(w);
          }, Vec3::Constant(q0)),
          cmd{Vec3::Constant(q0)} {
        plant.reset(Vec3::Constant(q0));
    }

    /// One tick with the given external tension; returns the frame.
    SensorFrame tick(const Vec3& ext) {
        const SensorFrame frame = plant.step(cmd, ext);
        cmd = controller.step(frame);
        return frame;
    }
};

}  // namespace

ImpulseReport cmd_impulse(const Config& cfg, const SequenceModel& model,
                          const std::string& out_csv) {
    const PlantConfig pc_base = plant_config_from(cfg);
    const ControllerConfig cc = controller_config_from(cfg, model);
    const std::string sec = "impulse";
    const int n_trials = static_cast<int>(cfg.get_int(sec, "trials", 20));
    const double k_wall = cfg.get_double(sec, "contact_stiffness", 2.0);
    const double mag_lo = cfg.get_double(sec, "magnitude_lo_lambda", 2.0);
    const double mag_hi = cfg.get_double(sec, "magnitude_hi_lambda", 4.0);
    const double settle_s = cfg.get_double(sec, "settle_s", 1.0);
    const double run_s = cfg.get_double(sec, "run_s", 4.0);
    const auto seed = static_cast<std::uint64_t>(cfg.get_int(sec, "seed", 101));

    const double q0 = safe_pose_mm(pc_base, sensing_range_from(cfg));
    const double rate = pc_base.control_rate;
    const auto warm_ticks = static_cast<long>(cc.window_len + settle_s * rate);
    const auto run_ticks = static_cast<long>(run_s * rate);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);

    ImpulseReport report;
    report.lambda = cc.lambda;
    std::vector<std::vector<double>> aligned_forces;  // per trial, from trigger

    CsvFile out(out_csv);
    std::fputs(
        "trial,magnitude_N,t_s,contact_force_N,Fext1_N,Fext2_N,Fext3_N\n",
        out.f);

    for (int trial = 0; trial < n_trials; ++trial) {
        PlantConfig pc = pc_base;
        pc.rng_seed = pc_base.rng_seed + static_cast<std::uint64_t>(trial);
        ClosedLoop loop(pc, cc, model, q0);
        for (long i = 0; i < warm_ticks; ++i) loop.tick(Vec3::Zero());

        const double magnitude =
            cc.lambda * (mag_lo + (mag_hi - mag_lo) *
                                      (n_trials > 1
                                           ? static_cast<double>(trial) /
                                                 (n_trials - 1)
                                           : 0.0));
        const double theta = angle(rng);
        const Vec2 push_dir(std::cos(theta), std::sin(theta));
        const double per_unit =
            cable_tension_of_tip_force(push_dir, pc.coupling_alpha)
                .cwiseAbs()
                .maxCoeff();
        const double f0 = magnitude / per_unit;  // tip force, N
        const double pen0 = f0 / k_wall;
        const Vec2 tip0 = loop.plant.tip_pose();

        ImpulseTrial tr;
        tr.magnitude = magnitude;
        tr.triggered = false;
        tr.trigger_tick = -1;
        tr.peak_f_ext = 0.0;
        tr.time_to_deadband = std::numeric_limits<double>::infinity();
        tr.excess_removed_05 = 0.0;

        int trig_cable = -1;
        std::vector<double> forces;
        std::vector<double> f_ext_trig;
        forces.reserve(run_ticks);
        for (long i = 0; i < run_ticks; ++i) {
            const Vec2 tip = loop.plant.tip_pose();
            const double depth = pen0 + (tip0 - tip).dot(push_dir);
            const Vec2 f = k_wall * std::max(0.0, depth) * push_dir;
            const Vec3 ext = f.isZero()
                                 ? Vec3::Zero()
                                 : cable_tension_of_tip_force(f, pc.coupling_alpha);
            loop.tick(ext);
            const Vec3 f_ext = loop.controller.last_f_ext();
            std::fprintf(out.f, "%d,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", trial,
                         magnitude, static_cast<double>(i) / rate, f.norm(),
                         f_ext[0], f_ext[1], f_ext[2]);

            if (!tr.triggered &&
                f_ext.cwiseAbs().maxCoeff() > cc.lambda) {
                tr.triggered = true;
                tr.trigger_tick = static_cast<int>(i);
                int idx = 0;
                f_ext.cwiseAbs().maxCoeff(&idx);
                trig_cable = idx;
            }
            if (tr.triggered) {
                forces.push_back(f.norm());
                f_ext_trig.push_back(std::abs(f_ext[trig_cable]));
            }
        }

        if (tr.triggered && !f_ext_trig.empty()) {
            const auto peak_span = static_cast<std::size_t>(
                std::min<double>(0.2 * rate, f_ext_trig.size()));
            tr.peak_f_ext = *std::max_element(
                f_ext_trig.begin(),
                f_ext_trig.begin() + std::max<std::size_t>(1, peak_span));
            for (std::size_t i = 0; i < f_ext_trig.size(); ++i) {
                if (f_ext_trig[i] <= cc.lambda) {
                    tr.time_to_deadband = static_cast<double>(i) / rate;
                    break;
                }
            }
            const auto i05 = static_cast<std::size_t>(0.5 * rate);
            if (i05 < f_ext_trig.size() && tr.peak_f_ext > cc.lambda) {
                const double removed = tr.peak_f_ext - f_ext_trig[i05];
                tr.excess_removed_05 =
                    std::max(0.0, removed / (tr.peak_f_ext - cc.lambda));
            }
            aligned_forces.push_back(std::move(forces));
        }
        report.trials.push_back(tr);
    }

    // Mean contact force per aligned tick over the triggered trials.
    std::size_t longest = 0;
    for (const auto& f : aligned_forces) longest = std::max(longest, f.size());
    report.aligned_mean_force.assign(longest, 0.0);
    for (std::size_t i = 0; i < longest; ++i) {
        double sum = 0.0;
        int count = 0;
        for (const auto& f : aligned_forces) {
            if (i < f.size()) {
                sum += f[i];
                ++count;
            }
        }
        report.aligned_mean_force[i] = count > 0 ? sum / count : 0.0;
    }
    return report;
}

InsertReport cmd_insert(const Config& cfg, const SequenceModel& model,
                        const std::string& out_prefix) {
    const PlantConfig pc = plant_config_from(cfg);
    const ControllerConfig cc = controller_config_from(cfg, model);
    const std::string sec = "insert";
    const int cycles = static_cast<int>(cfg.get_int(sec, "cycles", 10));
    const double speed = cfg.get_double(sec, "speed_mm_s", 29.0);
    const double tube_len = cfg.get_double(sec, "tube_length_mm", 100.0);
    const double bend = cfg.get_double(sec, "bend_amplitude_mm", 25.0);
    TubeGeometry tube;
    tube.inner_radius = cfg.get_double(sec, "inner_radius_mm", 13.0);
    tube.contact_stiffness = cfg.get_double(sec, "contact_stiffness", 1.0);
    const std::vector<double> thresholds = cfg.get_list(
        sec, "thresholds_N", {2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0});

    // Tube centreline sampled along the insertion axis; the bend grows
    // quadratically toward `bend` at full depth.
    auto center_at = [&](double depth) {
        const double u = depth / tube_len;
        return Vec2(bend * u * u, 0.0);
    };
    for (int i = 0; i <= 64; ++i)
        tube.centerline.push_back(center_at(tube_len * i / 64.0));
    tube.validate();

    const double q0 = safe_pose_mm(pc, sensing_range_from(cfg));
    const double rate = pc.control_rate;
    const double dt = 1.0 / rate;
    const auto warm_ticks = static_cast<long>(cc.window_len + rate);
    const auto cycle_ticks = static_cast<long>(2.0 * tube_len / speed * rate);

    InsertReport report;
    report.thresholds = thresholds;
    report.faulted_cycles = 0;
    report.peak_force_enabled = 0.0;
    report.peak_force_disabled = 0.0;

    CsvFile contact_out(out_prefix + "_contact.csv");
    std::fputs("cycle,t_s,depth_mm,contact_force_N,controller\n", contact_out.f);

    // Contact against the tube cross-section at the current insertion
    // depth, mapped to cable tensions with the plant's coupling constant.
    auto contact = [&](const Vec2& tip, double depth) -> Vec2 {
        const Vec2 center = center_at(depth);
        const Vec2 d = tip - center;
        const double dist = d.norm();
        const double pen = dist - tube.inner_radius;
        if (pen <= 0.0 || dist == 0.0) return Vec2::Zero();
        return -(tube.contact_stiffness * pen / dist) * d;
    };

    for (int pass = 0; pass < 2; ++pass) {
        const bool enabled = pass == 0;
        ClosedLoop loop(pc, cc, model, q0);
        for (long i = 0; i < warm_ticks; ++i) loop.tick(Vec3::Zero());
        double peak = 0.0;

        for (int cycle = 0; cycle < cycles; ++cycle) {
            std::vector<double> above(thresholds.size(), 0.0);
            bool faulted = false;
            for (long i = 0; i < cycle_ticks; ++i) {
                const double advance = speed * static_cast<double>(i) * dt;
                const double depth =
                    advance <= tube_len ? advance : 2.0 * tube_len - advance;
                const Vec2 tip = loop.plant.tip_pose();
                const Vec2 f = contact(tip, depth);
                const Vec3 ext =
                    f.isZero() ? Vec3::Zero()
                               : cable_tension_of_tip_force(f, pc.coupling_alpha);
                SensorFrame frame;
                if (enabled) {
                    frame = loop.tick(ext);
                } else {
                    frame = loop.plant.step(loop.cmd, ext);
                }
                const double fmag = f.norm();
                peak = std::max(peak, fmag);
                for (std::size_t k = 0; k < thresholds.size(); ++k)
                    if (fmag > thresholds[k]) above[k] += dt;
                std::fprintf(contact_out.f, "%d,%.9g,%.9g,%.9g,%d\n", cycle,
                             static_cast<double>(i) * dt, depth, fmag,
                             enabled ? 1 : 0);
                if (frame.fault) {
                    faulted = true;
                    break;
                }
            }
            if (enabled) {
                if (faulted)
                    ++report.faulted_cycles;
                else
                    report.duration_above.push_back(std::move(above));
            }
        }
        if (enabled)
            report.peak_force_enabled = peak;
        else
            report.peak_force_disabled = peak;
    }

    CsvFile hist_out(out_prefix + "_exceedance.csv");
    std::fputs("threshold_N,mean_duration_s", hist_out.f);
    for (std::size_t c = 0; c < report.duration_above.size(); ++c)
        std::fprintf(hist_out.f, ",cycle%zu_s", c);
    std::fputs("\n", hist_out.f);
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
        double sum = 0.0;
        for (const auto& row : report.duration_above) sum += row[k];
        const double mean =
            report.duration_above.empty()
                ? 0.0
                : sum / static_cast<double>(report.duration_above.size());
        std::fprintf(hist_out.f, "%.9g,%.9g", thresholds[k], mean);
        for (const auto& row : report.duration_above)
            std::fprintf(hist_out.f, ",%.9g", row[k]);
        std::fputs("\n", hist_out.f);
    }
    return report;
}

CalibrationReport cmd_calibrate(const Config& cfg, const std::string& out_csv) {
    const PlantConfig pc = plant_config_from(cfg);
    const std::string sec = "calibrate";
    CalibrationConfig cal;
    cal.repetitions = static_cast<int>(cfg.get_int(sec, "repetitions", 6));
    cal.load_levels = cfg.get_list(sec, "load_levels_N",
                                   {0.177, 0.353, 0.530, 0.706, 0.883});
    const double tilt = cfg.get_double(sec, "pose_tilt_mm", 4.0);

    const double q0 = safe_pose_mm(pc, sensing_range_from(cfg));
    cal.poses = {Vec3::Constant(q0),
                 Vec3(q0 + tilt, q0 - tilt / 2.0, q0 - tilt / 2.0),
                 Vec3(q0 - tilt / 2.0, q0 + tilt, q0 - tilt / 2.0)};

    Plant plant(pc);
    CalibrationReport report;
    report.trials = run_calibration(plant, cal);
    report.fit = fit_alpha(report.trials);
    report.alpha_true = pc.coupling_alpha;

    CsvFile out(out_csv);
    std::fputs("pose,applied_fx_N,applied_fy_N,Text1_N,Text2_N,Text3_N\n", out.f);
    for (const auto& t : report.trials)
        std::fprintf(out.f, "%d,%.9g,%.9g,%.9g,%.9g,%.9g\n", t.pose_id,
                     t.applied_force[0], t.applied_force[1], t.ext_tensions[0],
                     t.ext_tensions[1], t.ext_tensions[2]);
    std::fprintf(out.f, "# alpha=%.9g residual_N=%.9g alpha_true=%.9g\n",
                 report.fit.alpha, report.fit.rms_residual, report.alpha_true);
    return report;
}

}  // namespace tendon
