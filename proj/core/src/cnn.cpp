#include "tendon/cnn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tendon {

namespace {

Eigen::MatrixXd uniform_init(int rows, int cols, double bound,
                             std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = dist(rng);
    return m;
}

/// Sliding-window rearrangement: input in_ch x t_in (one sample) into
/// columns of stacked taps, (in_ch * kernel) x t_out.
void im2col(const Eigen::Ref<const Eigen::MatrixXd>& input, int kernel,
            Eigen::Ref<Eigen::MatrixXd> col) {
    const int in_ch = static_cast<int>(input.rows());
    const int t_out = static_cast<int>(col.cols());
    for (int t = 0; t < t_out; ++t)
        for (int j = 0; j < kernel; ++j)
            col.block(j * in_ch, t, in_ch, 1) = input.col(t + j);
}

}  // namespace

CnnParams CnnParams::zeros(int kernel, int layers) {
    CnnParams p;
    p.layers = layers;
    p.kernel = kernel;
    p.channels = kernel;
    p.w.resize(layers);
    p.b.resize(layers);
    for (int l = 0; l < layers; ++l) {
        const int in_ch = (l == 0) ? 3 : p.channels;
        p.w[l] = Eigen::MatrixXd::Zero(p.channels, in_ch * kernel);
        p.b[l] = Eigen::MatrixXd::Zero(p.channels, 1);
    }
    p.w_fc1 = Eigen::MatrixXd::Zero(32, p.channels);
    p.b_fc1 = Eigen::MatrixXd::Zero(32, 1);
    p.w_fc2 = Eigen::MatrixXd::Zero(3, 32);
    p.b_fc2 = Eigen::MatrixXd::Zero(3, 1);
    return p;
}

CnnParams CnnParams::init(int kernel, std::mt19937_64& rng, int layers) {
    CnnParams p = zeros(kernel, layers);
    for (int l = 0; l < layers; ++l) {
        const int fan_in = static_cast<int>(p.w[l].cols());
        p.w[l] = uniform_init(p.channels, fan_in, 1.0 / std::sqrt(fan_in), rng);
    }
    p.w_fc1 = uniform_init(32, p.channels, 1.0 / std::sqrt(p.channels), rng);
    p.w_fc2 = uniform_init(3, 32, 1.0 / std::sqrt(32.0), rng);
    return p;
}

std::vector<ParamRef> CnnParams::refs() {
    std::vector<ParamRef> r;
    for (int l = 0; l < layers; ++l) {
        r.push_back({"conv_w" + std::to_string(l), &w[l]});
        r.push_back({"conv_b" + std::to_string(l), &b[l]});
    }
    r.push_back({"w_fc1", &w_fc1});
    r.push_back({"b_fc1", &b_fc1});
    r.push_back({"w_fc2", &w_fc2});
    r.push_back({"b_fc2", &b_fc2});
    return r;
}

std::vector<ConstParamRef> CnnParams::refs() const {
    auto mut = const_cast<CnnParams*>(this)->refs();
    std::vector<ConstParamRef> r;
    r.reserve(mut.size());
    for (auto& m : mut) r.push_back({m.name, m.mat});
    return r;
}

Eigen::MatrixXd cnn_forward_batch(const CnnParams& p,
                                  const std::vector<Eigen::MatrixXd>& steps,
                                  CnnCache* cache) {
    const int window = static_cast<int>(steps.size());
    if (window < p.min_window())
        throw std::invalid_argument(
            "cnn_forward: window of " + std::to_string(window) +
            " ticks is shorter than the receptive field requires (" +
            std::to_string(p.min_window()) + ")");
    const int batch = static_cast<int>(steps.front().cols());

    // Assemble the chronological input, 3 x window per sample.
    Eigen::MatrixXd cur(3, static_cast<long>(batch) * window);
    for (int t = 0; t < window; ++t)
        for (int bi = 0; bi < batch; ++bi)
            cur.col(static_cast<long>(bi) * window + t) = steps[t].col(bi);

    CnnCache local;
    CnnCache& cc = cache ? *cache : local;
    cc.batch = batch;
    cc.window = window;
    cc.layer.assign(p.layers, {});

    int t_in = window;
    for (int l = 0; l < p.layers; ++l) {
        const int in_ch = (l == 0) ? 3 : p.channels;
        const int t_out = t_in - p.kernel + 1;
        CnnLayerCache& lc = cc.layer[l];
        lc.t_in = t_in;
        lc.t_out = t_out;
        lc.col.resize(in_ch * p.kernel, static_cast<long>(batch) * t_out);
        for (int bi = 0; bi < batch; ++bi)
            im2col(cur.block(0, static_cast<long>(bi) * t_in, in_ch, t_in),
                   p.kernel,
                   lc.col.block(0, static_cast<long>(bi) * t_out,
                                in_ch * p.kernel, t_out));
        Eigen::MatrixXd z = p.w[l] * lc.col;
        z.colwise() += Eigen::VectorXd(p.b[l]);
        lc.act = z.cwiseMax(0.0);
        cur = lc.act;
        t_in = t_out;
    }

    // Global max-pool over time per channel and sample.
    cc.pooled.resize(p.channels, batch);
    cc.argmax.resize(p.channels, batch);
    const int t_final = t_in;
    for (int bi = 0; bi < batch; ++bi) {
        for (int ch = 0; ch < p.channels; ++ch) {
            int best_t = 0;
            double best = cur(ch, static_cast<long>(bi) * t_final);
            for (int t = 1; t < t_final; ++t) {
                const double v = cur(ch, static_cast<long>(bi) * t_final + t);
                if (v > best) {
                    best = v;
                    best_t = t;
                }
            }
            cc.pooled(ch, bi) = best;
            cc.argmax(ch, bi) = best_t;
        }
    }

    cc.z1 = p.w_fc1 * cc.pooled;
    cc.z1.colwise() += Eigen::VectorXd(p.b_fc1);
    cc.y = p.w_fc2 * cc.z1;
    cc.y.colwise() += Eigen::VectorXd(p.b_fc2);
    if (!cc.y.allFinite())
        throw std::runtime_error("cnn_forward: non-finite output");
    return cc.y;
}

Vec3 cnn_forward(const CnnParams& p, const Eigen::Matrix3Xd& window,
                 CnnCache* cache) {
    std::vector<Eigen::MatrixXd> steps;
    steps.reserve(window.cols());
    for (Eigen::Index j = window.cols() - 1; j >= 0; --j)
        steps.push_back(window.col(j));
    return cnn_forward_batch(p, steps, cache).col(0);
}

void cnn_backward(const CnnParams& p, const CnnCache& cache,
                  const Eigen::MatrixXd& dy, CnnParams& grads) {
    if (cache.layer.empty() || cache.batch == 0)
        throw std::invalid_argument("cnn_backward: stale or empty cache");
    const int batch = cache.batch;
    if (dy.rows() != 3 || dy.cols() != batch)
        throw std::invalid_argument("cnn_backward: dy shape mismatch");

    grads = CnnParams::zeros(p.kernel, p.layers);

    grads.w_fc2.noalias() = dy * cache.z1.transpose();
    grads.b_fc2 = dy.rowwise().sum();
    Eigen::MatrixXd dz1 = p.w_fc2.transpose() * dy;
    grads.w_fc1.noalias() = dz1 * cache.pooled.transpose();
    grads.b_fc1 = dz1.rowwise().sum();
    Eigen::MatrixXd dpool = p.w_fc1.transpose() * dz1;

    // Route the pooled gradient back to the argmax positions.
    const CnnLayerCache& last = cache.layer.back();
    Eigen::MatrixXd dact =
        Eigen::MatrixXd::Zero(p.channels, static_cast<long>(batch) * last.t_out);
    for (int bi = 0; bi < batch; ++bi)
        for (int ch = 0; ch < p.channels; ++ch)
            dact(ch, static_cast<long>(bi) * last.t_out + cache.argmax(ch, bi)) =
                dpool(ch, bi);

    for (int l = p.layers - 1; l >= 0; --l) {
        const CnnLayerCache& lc = cache.layer[l];
        const int in_ch = (l == 0) ? 3 : p.channels;
        const Eigen::MatrixXd dz = dact.cwiseProduct(
            (lc.act.array() > 0.0).cast<double>().matrix());
        grads.w[l].noalias() = dz * lc.col.transpose();
        grads.b[l] = dz.rowwise().sum();
        if (l == 0) break;
        const Eigen::MatrixXd dcol = p.w[l].transpose() * dz;
        // col2im: scatter tap gradients back onto the previous activation.
        Eigen::MatrixXd dprev = Eigen::MatrixXd::Zero(
            in_ch, static_cast<long>(batch) * lc.t_in);
        for (int bi = 0; bi < batch; ++bi)
            for (int t = 0; t < lc.t_out; ++t)
                for (int j = 0; j < p.kernel; ++j)
                    dprev.col(static_cast<long>(bi) * lc.t_in + t + j) +=
                        dcol.block(j * in_ch, static_cast<long>(bi) * lc.t_out + t,
                                   in_ch, 1);
        dact = std::move(dprev);
    }
}

}  // namespace tendon
