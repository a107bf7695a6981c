#include "tendon/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tendon/loss.hpp"

namespace tendon {

namespace {

Normalizer fit_normalizer(const Dataset& d) {
    Normalizer n;
    Vec3 qm = Vec3::Zero(), fm = Vec3::Zero();
    for (const auto& r : d.records) {
        qm += r.q;
        fm += r.tension;
    }
    const double count = static_cast<double>(d.records.size());
    qm /= count;
    fm /= count;
    Vec3 qv = Vec3::Zero(), fv = Vec3::Zero();
    for (const auto& r : d.records) {
        qv += (r.q - qm).cwiseAbs2();
        fv += (r.tension - fm).cwiseAbs2();
    }
    n.in_mean = qm;
    n.out_mean = fm;
    n.in_std = (qv / count).cwiseSqrt().cwiseMax(1e-9);
    n.out_std = (fv / count).cwiseSqrt().cwiseMax(1e-9);
    return n;
}

/// Batched normalized inputs, steps[0] oldest; starts index the dataset.
std::vector<Eigen::MatrixXd> batch_steps(const Dataset& d,
                                         const Normalizer& norm,
                                         const std::vector<int>& starts,
                                         std::size_t first, int batch,
                                         int window) {
    std::vector<Eigen::MatrixXd> steps(window, Eigen::MatrixXd(3, batch));
    for (int b = 0; b < batch; ++b) {
        const int s = starts[first + b];
        for (int t = 0; t < window; ++t)
            steps[t].col(b) = norm.normalize_in(d.records[s + t].q);
    }
    return steps;
}

Eigen::MatrixXd batch_targets(const Dataset& d, const Normalizer& norm,
                              const std::vector<int>& starts,
                              std::size_t first, int batch, int window) {
    Eigen::MatrixXd y(3, batch);
    for (int b = 0; b < batch; ++b)
        y.col(b) = norm.normalize_out(
            d.records[starts[first + b] + window].tension);
    return y;
}

}  // namespace

SequenceModel train(const ModelSpec& spec, const Dataset& dataset,
                    const TrainConfig& cfg) {
    cfg.validate();
    const int n = spec.window_len;
    if (static_cast<int>(dataset.size()) <= n + 1)
        throw std::invalid_argument("train: dataset shorter than one window");

    auto [train_set, val_set] = split(dataset, 0.8);

    SequenceModel m;
    m.kind = spec.kind;
    m.window_len = n;
    m.hidden = spec.hidden;
    m.norm = fit_normalizer(train_set);

    std::mt19937_64 rng(cfg.rng_seed);
    if (spec.kind == ModelKind::kLstm) {
        m.lstm = LstmParams::init(spec.hidden, rng);
    } else {
        m.cnn = CnnParams::init(spec.hidden, rng);
        if (n < m.cnn.min_window())
            throw std::invalid_argument(
                "train: window shorter than CNN receptive field");
    }

    std::vector<int> starts = window_starts(train_set, n);
    if (starts.empty())
        throw std::invalid_argument("train: no admissible windows");

    LstmParams lstm_grads, lstm_vel;
    CnnParams cnn_grads, cnn_vel;
    if (spec.kind == ModelKind::kLstm) {
        lstm_vel = LstmParams::zeros(spec.hidden);
    } else {
        cnn_vel = CnnParams::zeros(spec.hidden);
    }

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(starts.begin(), starts.end(), rng);
        double loss_sum = 0.0;
        int batches_done = 0;
        for (int bi = 0; bi < cfg.batches_per_epoch; ++bi) {
            const std::size_t first =
                (static_cast<std::size_t>(bi) * cfg.batch_size) % starts.size();
            const int batch = static_cast<int>(
                std::min<std::size_t>(cfg.batch_size, starts.size() - first));
            auto steps = batch_steps(train_set, m.norm, starts, first, batch, n);
            const Eigen::MatrixXd targets =
                batch_targets(train_set, m.norm, starts, first, batch, n);

            LstmCache lstm_cache;
            CnnCache cnn_cache;
            const Eigen::MatrixXd y =
                m.forward_batch(steps, &lstm_cache, &cnn_cache);
            const Eigen::MatrixXd err = y - targets;
            const double loss = err.squaredNorm() / (3.0 * batch);
            if (!std::isfinite(loss)) throw TrainDivergence(epoch);
            loss_sum += loss;
            ++batches_done;

            const Eigen::MatrixXd dy = (2.0 / (3.0 * batch)) * err;
            if (spec.kind == ModelKind::kLstm) {
                lstm_backward(m.lstm, lstm_cache, dy, lstm_grads);
                auto p = m.lstm.refs();
                auto g = lstm_grads.refs();
                auto v = lstm_vel.refs();
                clip_gradients(g, cfg.grad_clip_norm);
                sgd_momentum_step(p, g, v, cfg);
            } else {
                cnn_backward(m.cnn, cnn_cache, dy, cnn_grads);
                auto p = m.cnn.refs();
                auto g = cnn_grads.refs();
                auto v = cnn_vel.refs();
                clip_gradients(g, cfg.grad_clip_norm);
                sgd_momentum_step(p, g, v, cfg);
            }
        }
        const double val_err = evaluate(m, val_set, cfg.eval_stride);
        if (!std::isfinite(val_err)) throw TrainDivergence(epoch);
        m.history.push_back({loss_sum / std::max(1, batches_done), val_err});
    }
    return m;
}

double evaluate(const SequenceModel& model, const Dataset& dataset,
                int stride) {
    const int n = model.window_len;
    const std::vector<int> all = window_starts(dataset, n);
    if (all.empty())
        throw std::invalid_argument("evaluate: no admissible windows");
    std::vector<int> starts;
    for (std::size_t i = 0; i < all.size(); i += std::max(1, stride))
        starts.push_back(all[i]);

    double err_sum = 0.0;
    std::size_t count = 0;
    const int chunk = 64;
    for (std::size_t first = 0; first < starts.size(); first += chunk) {
        const int batch = static_cast<int>(
            std::min<std::size_t>(chunk, starts.size() - first));
        std::vector<Eigen::MatrixXd> steps(n, Eigen::MatrixXd(3, batch));
        Eigen::MatrixXd targets(3, batch);
        for (int b = 0; b < batch; ++b) {
            const int s = starts[first + b];
            for (int t = 0; t < n; ++t)
                steps[t].col(b) = model.norm.normalize_in(dataset.records[s + t].q);
            targets.col(b) = dataset.records[s + n].tension;
        }
        const Eigen::MatrixXd y = model.forward_batch(steps, nullptr, nullptr);
        for (int b = 0; b < batch; ++b) {
            const Vec3 pred = model.norm.denormalize_out(y.col(b));
            err_sum += (pred - Vec3(targets.col(b))).cwiseAbs().mean();
            ++count;
        }
    }
    return err_sum / static_cast<double>(count);
}

double tension_stddev(const Dataset& dataset) {
    if (dataset.records.empty())
        throw std::invalid_argument("tension_stddev: empty dataset");
    Vec3 mean = Vec3::Zero();
    for (const auto& r : dataset.records) mean += r.tension;
    mean /= static_cast<double>(dataset.size());
    Vec3 var = Vec3::Zero();
    for (const auto& r : dataset.records) var += (r.tension - mean).cwiseAbs2();
    var /= static_cast<double>(dataset.size());
    return var.cwiseSqrt().mean();
}

}  // namespace tendon
