#include <doctest.h>

#include <cmath>
#include <random>

#include "tendon/lstm.hpp"

using namespace tendon;

TEST_CASE("zero-parameter cell halves the carry") {
    // With all weights and biases zero the gates sit at sigmoid(0) = 0.5
    // and the modulation at tanh(0) = 0, so c = 0.5 c_prev and
    // h = 0.5 tanh(0.5 c_prev).
    LstmParams p = LstmParams::zeros(4);
    Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(4);
    Eigen::VectorXd c_prev(4);
    c_prev << 1.0, -2.0, 0.5, 3.0;
    Eigen::VectorXd h, c;
    lstm_cell(p, Vec3(0.3, -0.1, 0.7), h_prev, c_prev, h, c);
    for (int i = 0; i < 4; ++i) {
        CHECK(c[i] == doctest::Approx(0.5 * c_prev[i]).epsilon(1e-15));
        CHECK(h[i] ==
              doctest::Approx(0.5 * std::tanh(0.5 * c_prev[i])).epsilon(1e-15));
    }
}

TEST_CASE("forward is sensitive to window order") {
    std::mt19937_64 rng(21);
    LstmParams p = LstmParams::init(6, rng);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::Matrix3Xd w(3, 8);
    w = w.unaryExpr([&](double) { return nd(rng); });
    Eigen::Matrix3Xd rev = w.rowwise().reverse();
    const Vec3 a = lstm_forward(p, w);
    const Vec3 b = lstm_forward(p, rev);
    CHECK((a - b).cwiseAbs().maxCoeff() > 1e-9);
}

TEST_CASE("batched forward matches the single-window path") {
    std::mt19937_64 rng(22);
    LstmParams p = LstmParams::init(6, rng);
    std::normal_distribution<double> nd(0.0, 1.0);
    const int window = 7, batch = 5;
    std::vector<Eigen::Matrix3Xd> windows(batch, Eigen::Matrix3Xd(3, window));
    for (auto& w : windows) w = w.unaryExpr([&](double) { return nd(rng); });

    std::vector<Eigen::MatrixXd> steps(window, Eigen::MatrixXd(3, batch));
    for (int b = 0; b < batch; ++b)
        for (int t = 0; t < window; ++t)
            steps[t].col(b) = windows[b].col(window - 1 - t);
    const Eigen::MatrixXd y = lstm_forward_batch(p, steps, nullptr);

    for (int b = 0; b < batch; ++b) {
        const Vec3 single = lstm_forward(p, windows[b]);
        CHECK((y.col(b) - single).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("initialization shapes and forget bias") {
    std::mt19937_64 rng(1);
    LstmParams p = LstmParams::init(16, rng);
    for (int g = 0; g < 4; ++g) {
        CHECK(p.w_q[g].rows() == 16);
        CHECK(p.w_q[g].cols() == 3);
        CHECK(p.w_h[g].rows() == 16);
        CHECK(p.w_h[g].cols() == 16);
        CHECK(p.w_q[g].cwiseAbs().maxCoeff() <= 1.0 / std::sqrt(3.0));
        CHECK(p.w_h[g].cwiseAbs().maxCoeff() <= 1.0 / 4.0);
    }
    CHECK((p.b[kGateF].array() == 1.0).all());
    CHECK((p.b[kGateI].array() == 0.0).all());
    CHECK(p.w_fc1.rows() == 32);
    CHECK(p.w_fc2.rows() == 3);
}

TEST_CASE("parameter refs walk every tensor exactly once") {
    LstmParams p = LstmParams::zeros(4);
    auto refs = p.refs();
    CHECK(refs.size() == 4 * 3 + 4);
    std::size_t scalars = 0;
    for (const auto& r : refs) scalars += r.mat->size();
    // 4 gates x (4x3 + 4x4 + 4x1) + 32x4 + 32 + 3x32 + 3
    CHECK(scalars == 4 * (12 + 16 + 4) + 128 + 32 + 96 + 3);
}
