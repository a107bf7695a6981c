#include "tendon/lstm.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace tendon {

namespace {

const char* kGateNames[4] = {"i", "f", "o", "g"};

Eigen::MatrixXd uniform_init(int rows, int cols, double bound,
                             std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd m(rows, cols);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r) m(r, c) = dist(rng);
    return m;
}

inline Eigen::MatrixXd sigmoid(const Eigen::MatrixXd& a) {
    return (1.0 + (-a.array()).exp()).inverse().matrix();
}

}  // namespace

LstmParams LstmParams::zeros(int hidden) {
    LstmParams p;
    p.hidden = hidden;
    for (int g = 0; g < 4; ++g) {
        p.w_q[g] = Eigen::MatrixXd::Zero(hidden, 3);
        p.w_h[g] = Eigen::MatrixXd::Zero(hidden, hidden);
        p.b[g] = Eigen::MatrixXd::Zero(hidden, 1);
    }
    p.w_fc1 = Eigen::MatrixXd::Zero(32, hidden);
    p.b_fc1 = Eigen::MatrixXd::Zero(32, 1);
    p.w_fc2 = Eigen::MatrixXd::Zero(3, 32);
    p.b_fc2 = Eigen::MatrixXd::Zero(3, 1);
    return p;
}

LstmParams LstmParams::init(int hidden, std::mt19937_64& rng) {
    LstmParams p = zeros(hidden);
    const double bq = 1.0 / std::sqrt(3.0);
    const double bh = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (int g = 0; g < 4; ++g) {
        p.w_q[g] = uniform_init(hidden, 3, bq, rng);
        p.w_h[g] = uniform_init(hidden, hidden, bh, rng);
    }
    p.b[kGateF].setOnes();
    p.w_fc1 = uniform_init(32, hidden, bh, rng);
    p.w_fc2 = uniform_init(3, 32, 1.0 / std::sqrt(32.0), rng);
    return p;
}

std::vector<ParamRef> LstmParams::refs() {
    std::vector<ParamRef> r;
    for (int g = 0; g < 4; ++g) {
        r.push_back({std::string("w_q") + kGateNames[g], &w_q[g]});
        r.push_back({std::string("w_h") + kGateNames[g], &w_h[g]});
        r.push_back({std::string("b_") + kGateNames[g], &b[g]});
    }
    r.push_back({"w_fc1", &w_fc1});
    r.push_back({"b_fc1", &b_fc1});
    r.push_back({"w_fc2", &w_fc2});
    r.push_back({"b_fc2", &b_fc2});
    return r;
}

std::vector<ConstParamRef> LstmParams::refs() const {
    auto mut = const_cast<LstmParams*>(this)->refs();
    std::vector<ConstParamRef> r;
    r.reserve(mut.size());
    for (auto& m : mut) r.push_back({m.name, m.mat});
    return r;
}

void lstm_cell(const LstmParams& p, const Vec3& q_t,
               const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev,
               Eigen::VectorXd& h_out, Eigen::VectorXd& c_out) {
    if (h_prev.size() != p.hidden || c_prev.size() != p.hidden)
        throw std::invalid_argument("lstm_cell: state size does not match hidden");
    std::array<Eigen::MatrixXd, 4> a;
    for (int g = 0; g < 4; ++g)
        a[g] = p.w_q[g] * q_t + p.w_h[g] * h_prev + p.b[g];
    const Eigen::MatrixXd i = sigmoid(a[kGateI]);
    const Eigen::MatrixXd f = sigmoid(a[kGateF]);
    const Eigen::MatrixXd o = sigmoid(a[kGateO]);
    const Eigen::MatrixXd g = a[kGateG].array().tanh().matrix();
    c_out = f.cwiseProduct(c_prev) + i.cwiseProduct(g);
    h_out = o.cwiseProduct(c_out.array().tanh().matrix());
}

Eigen::MatrixXd lstm_forward_batch(const LstmParams& p,
                                   const std::vector<Eigen::MatrixXd>& steps,
                                   LstmCache* cache) {
    if (steps.empty()) throw std::invalid_argument("lstm_forward: empty window");
    const int batch = static_cast<int>(steps.front().cols());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p.hidden, batch);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(p.hidden, batch);
    if (cache) {
        cache->steps.clear();
        cache->steps.reserve(steps.size());
    }

    for (std::size_t t = 0; t < steps.size(); ++t) {
        const Eigen::MatrixXd& x = steps[t];
        if (x.rows() != 3 || x.cols() != batch)
            throw std::invalid_argument("lstm_forward: bad step shape");
        LstmStepCache sc;
        if (cache) {
            sc.x = x;
            sc.h_prev = h;
            sc.c_prev = c;
        }
        std::array<Eigen::MatrixXd, 4> a;
        for (int g = 0; g < 4; ++g) {
            a[g].noalias() = p.w_h[g] * h;
            a[g].noalias() += p.w_q[g] * x;
            a[g].colwise() += Eigen::VectorXd(p.b[g]);
        }
        const Eigen::MatrixXd gi = sigmoid(a[kGateI]);
        const Eigen::MatrixXd gf = sigmoid(a[kGateF]);
        const Eigen::MatrixXd go = sigmoid(a[kGateO]);
        const Eigen::MatrixXd gg = a[kGateG].array().tanh().matrix();
        c = gf.cwiseProduct(c) + gi.cwiseProduct(gg);
        const Eigen::MatrixXd tanh_c = c.array().tanh().matrix();
        h = go.cwiseProduct(tanh_c);
        if (!h.allFinite())
            throw std::runtime_error("lstm_forward: non-finite activation at step " +
                                     std::to_string(t));
        if (cache) {
            sc.gate = {gi, gf, go, gg};
            sc.c = c;
            sc.tanh_c = tanh_c;
            sc.h = h;
            cache->steps.push_back(std::move(sc));
        }
    }

    Eigen::MatrixXd z1 = p.w_fc1 * h;
    z1.colwise() += Eigen::VectorXd(p.b_fc1);
    Eigen::MatrixXd y = p.w_fc2 * z1;
    y.colwise() += Eigen::VectorXd(p.b_fc2);
    if (cache) {
        cache->z1 = z1;
        cache->y = y;
    }
    return y;
}

Vec3 lstm_forward(const LstmParams& p, const Eigen::Matrix3Xd& window,
                  LstmCache* cache) {
    std::vector<Eigen::MatrixXd> steps;
    steps.reserve(window.cols());
    // Window columns run newest-first; the unroll wants oldest first.
    for (Eigen::Index j = window.cols() - 1; j >= 0; --j)
        steps.push_back(window.col(j));
    return lstm_forward_batch(p, steps, cache).col(0);
}

void lstm_backward(const LstmParams& p, const LstmCache& cache,
                   const Eigen::MatrixXd& dy, LstmParams& grads) {
    if (cache.steps.empty())
        throw std::invalid_argument("lstm_backward: cache has no steps");
    if (cache.steps.front().x.size() == 0)
        throw std::invalid_argument("lstm_backward: cache was built without inputs");
    const int batch = static_cast<int>(dy.cols());
    if (dy.rows() != 3 || cache.y.cols() != batch)
        throw std::invalid_argument("lstm_backward: dy shape mismatch");

    grads = LstmParams::zeros(p.hidden);

    // Head.
    grads.w_fc2.noalias() = dy * cache.z1.transpose();
    grads.b_fc2 = dy.rowwise().sum();
    Eigen::MatrixXd dz1 = p.w_fc2.transpose() * dy;
    const Eigen::MatrixXd& h_last = cache.steps.back().h;
    grads.w_fc1.noalias() = dz1 * h_last.transpose();
    grads.b_fc1 = dz1.rowwise().sum();

    Eigen::MatrixXd dh = p.w_fc1.transpose() * dz1;
    Eigen::MatrixXd dc = Eigen::MatrixXd::Zero(p.hidden, batch);

    for (auto it = cache.steps.rbegin(); it != cache.steps.rend(); ++it) {
        const LstmStepCache& sc = *it;
        const Eigen::MatrixXd& gi = sc.gate[kGateI];
        const Eigen::MatrixXd& gf = sc.gate[kGateF];
        const Eigen::MatrixXd& go = sc.gate[kGateO];
        const Eigen::MatrixXd& gg = sc.gate[kGateG];

        const Eigen::MatrixXd d_o = dh.cwiseProduct(sc.tanh_c);
        dc += dh.cwiseProduct(go).cwiseProduct(
            (1.0 - sc.tanh_c.array().square()).matrix());
        const Eigen::MatrixXd d_f = dc.cwiseProduct(sc.c_prev);
        const Eigen::MatrixXd d_i = dc.cwiseProduct(gg);
        const Eigen::MatrixXd d_g = dc.cwiseProduct(gi);

        std::array<Eigen::MatrixXd, 4> da;
        da[kGateI] = d_i.cwiseProduct(gi).cwiseProduct((1.0 - gi.array()).matrix());
        da[kGateF] = d_f.cwiseProduct(gf).cwiseProduct((1.0 - gf.array()).matrix());
        da[kGateO] = d_o.cwiseProduct(go).cwiseProduct((1.0 - go.array()).matrix());
        da[kGateG] = d_g.cwiseProduct((1.0 - gg.array().square()).matrix());

        Eigen::MatrixXd dh_prev = Eigen::MatrixXd::Zero(p.hidden, batch);
        for (int g = 0; g < 4; ++g) {
            grads.w_q[g].noalias() += da[g] * sc.x.transpose();
            grads.w_h[g].noalias() += da[g] * sc.h_prev.transpose();
            grads.b[g] += da[g].rowwise().sum();
            dh_prev.noalias() += p.w_h[g].transpose() * da[g];
        }
        dh = std::move(dh_prev);
        dc = dc.cwiseProduct(gf);
    }
}

}  // namespace tendon
