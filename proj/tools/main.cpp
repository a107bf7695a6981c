#include <cstdio>
#include <exception>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "tendon/checkpoint.hpp"
#include "tendon/scenarios.hpp"

namespace {

struct CommonOpts {
    std::string config_path;
    long seed = -1;
    std::string out;
};

void add_common(CLI::App* cmd, CommonOpts& opts, const std::string& out_default) {
    cmd->add_option("--config", opts.config_path, "configuration file (INI)");
    cmd->add_option("--seed", opts.seed, "override every scenario seed");
    opts.out = out_default;
    cmd->add_option("--out", opts.out, "output path")
        ->capture_default_str();
}

tendon::Config load_config(const CommonOpts& opts) {
    tendon::Config cfg = opts.config_path.empty()
                             ? tendon::Config::from_string(
                                   tendon::default_config_text())
                             : tendon::Config::load(opts.config_path);
    if (opts.seed >= 0) {
        const std::string s = std::to_string(opts.seed);
        for (const char* section : {"plant", "explorer", "train", "impulse"})
            cfg.set(section, "seed", s);
        cfg.set("compare", "seeds", s);
    }
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulation lab for compliant tendon-driven motion control"};
    app.require_subcommand(1);

    CommonOpts collect_o, train_o, eval_o, compare_o, impulse_o, insert_o,
        calibrate_o, statics_o, print_o;
    std::string train_data, eval_data, eval_model, compare_data, impulse_model,
        insert_model;

    auto* collect = app.add_subcommand("collect", "run the data-collection explorer");
    add_common(collect, collect_o, "dataset.csv");

    auto* train = app.add_subcommand("train", "train a tension predictor");
    add_common(train, train_o, "model.json");
    train->add_option("--data", train_data, "dataset CSV from collect")
        ->required();

    auto* eval = app.add_subcommand("eval", "report a model's mean error");
    add_common(eval, eval_o, "eval.txt");
    eval->add_option("--model", eval_model, "model checkpoint")->required();
    eval->add_option("--data", eval_data, "dataset CSV")->required();

    auto* compare = app.add_subcommand(
        "compare", "train the architecture/size/window grid");
    add_common(compare, compare_o, "compare.csv");
    compare->add_option("--data", compare_data, "dataset CSV")->required();

    auto* impulse = app.add_subcommand(
        "impulse", "closed-loop response to sudden tip contact");
    add_common(impulse, impulse_o, "impulse.csv");
    impulse->add_option("--model", impulse_model, "model checkpoint")
        ->required();

    auto* insert = app.add_subcommand(
        "insert", "repeated insertion into a curved tube");
    add_common(insert, insert_o, "insert");
    insert->add_option("--model", insert_model, "model checkpoint")->required();

    auto* calibrate = app.add_subcommand(
        "calibrate", "tip-force calibration against known loads");
    add_common(calibrate, calibrate_o, "calibration.csv");

    auto* statics = app.add_subcommand(
        "rate-statics", "tension response of triangle sweeps at several speeds");
    add_common(statics, statics_o, "rate_statics.csv");

    auto* print = app.add_subcommand("print-config",
                                     "write the effective configuration");
    add_common(print, print_o, "-");

    CLI11_PARSE(app, argc, argv);

    try {
        if (collect->parsed()) {
            const tendon::Dataset d =
                tendon::cmd_collect(load_config(collect_o), collect_o.out);
            std::printf("wrote %zu records (%d sessions) to %s\n",
                        d.records.size(),
                        d.records.empty() ? 0 : d.records.back().session + 1,
                        collect_o.out.c_str());
        } else if (train->parsed()) {
            const tendon::Dataset d = tendon::read_dataset_csv(train_data);
            const tendon::SequenceModel m =
                tendon::cmd_train(load_config(train_o), d, train_o.out);
            std::printf("final val error %.4f N, checkpoint %s\n",
                        m.history.back().val_error, train_o.out.c_str());
        } else if (eval->parsed()) {
            const tendon::SequenceModel m = tendon::load_checkpoint(eval_model);
            const tendon::Dataset d = tendon::read_dataset_csv(eval_data);
            const tendon::EvalReport r = tendon::cmd_eval(m, d);
            std::printf("mean error %.4f N, suggested lambda %.4f N\n",
                        r.mean_error, r.lambda);
            if (eval_o.out != "-") {
                std::ofstream f(eval_o.out);
                f << "mean_error_N=" << r.mean_error << "\n"
                  << "lambda_N=" << r.lambda << "\n";
            }
        } else if (compare->parsed()) {
            const tendon::Dataset d = tendon::read_dataset_csv(compare_data);
            const auto cells =
                tendon::cmd_compare(load_config(compare_o), d, compare_o.out);
            for (const auto& c : cells)
                if (c.seed == ~std::uint64_t{0})
                    std::printf("%-4s hidden=%-2d window=%-3d  %.4f N  (%s)\n",
                                c.model.c_str(), c.hidden, c.window,
                                c.val_error, c.status.c_str());
        } else if (impulse->parsed()) {
            const tendon::SequenceModel m =
                tendon::load_checkpoint(impulse_model);
            const tendon::ImpulseReport r =
                tendon::cmd_impulse(load_config(impulse_o), m, impulse_o.out);
            int triggered = 0;
            double worst = 0.0;
            for (const auto& t : r.trials)
                if (t.triggered) {
                    ++triggered;
                    worst = std::max(worst, t.time_to_deadband);
                }
            std::printf(
                "lambda %.4f N, %d/%zu trials triggered, slowest return to "
                "deadband %.2f s\n",
                r.lambda, triggered, r.trials.size(), worst);
        } else if (insert->parsed()) {
            const tendon::SequenceModel m = tendon::load_checkpoint(insert_model);
            const tendon::InsertReport r =
                tendon::cmd_insert(load_config(insert_o), m, insert_o.out);
            std::printf(
                "peak contact force %.2f N with control, %.2f N without; %d "
                "faulted cycles\n",
                r.peak_force_enabled, r.peak_force_disabled, r.faulted_cycles);
        } else if (calibrate->parsed()) {
            const tendon::CalibrationReport r =
                tendon::cmd_calibrate(load_config(calibrate_o), calibrate_o.out);
            std::printf("alpha %.5f (true %.5f), rms residual %.4f N over %zu "
                        "trials\n",
                        r.fit.alpha, r.alpha_true, r.fit.rms_residual,
                        r.trials.size());
        } else if (statics->parsed()) {
            tendon::cmd_rate_statics(load_config(statics_o), statics_o.out);
            std::printf("wrote %s\n", statics_o.out.c_str());
        } else if (print->parsed()) {
            const std::string text = tendon::default_config_text();
            if (print_o.out == "-") {
                std::fputs(text.c_str(), stdout);
            } else {
                std::ofstream f(print_o.out);
                f << text;
            }
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
