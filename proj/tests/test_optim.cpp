#include <doctest.h>

#include <cmath>
#include <random>

#include "tendon/dataset.hpp"
#include "tendon/gradcheck.hpp"
#include "tendon/loss.hpp"
#include "tendon/train.hpp"

using namespace tendon;

TEST_CASE("momentum update matches hand arithmetic") {
    TrainConfig cfg;
    Eigen::MatrixXd theta = Eigen::MatrixXd::Constant(1, 1, 1.0);
    Eigen::MatrixXd grad = Eigen::MatrixXd::Constant(1, 1, 1.0);
    Eigen::MatrixXd vel = Eigen::MatrixXd::Zero(1, 1);
    std::vector<ParamRef> p{{"theta", &theta}};
    std::vector<ParamRef> g{{"theta", &grad}};
    std::vector<ParamRef> v{{"theta", &vel}};

    sgd_momentum_step(p, g, v, cfg);
    CHECK(vel(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(theta(0, 0) == doctest::Approx(0.995).epsilon(1e-15));

    sgd_momentum_step(p, g, v, cfg);
    CHECK(vel(0, 0) == doctest::Approx(1.9).epsilon(1e-15));
    CHECK(theta(0, 0) == doctest::Approx(0.9855).epsilon(1e-12));
}

TEST_CASE("gradient clipping rescales only above the threshold") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(2, 2, 3.0);  // norm 6
    Eigen::MatrixXd b = Eigen::MatrixXd::Constant(1, 1, 8.0);  // joint norm 10
    std::vector<ParamRef> g{{"a", &a}, {"b", &b}};

    CHECK(clip_gradients(g, 5.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(a(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(b(0, 0) == doctest::Approx(4.0).epsilon(1e-12));

    // Already within bounds: untouched. Non-positive max: no-op.
    CHECK(clip_gradients(g, 5.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(a(0, 0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(clip_gradients(g, 0.0) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(b(0, 0) == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("zero gradients leave parameters unchanged") {
    TrainConfig cfg;
    Eigen::MatrixXd theta = Eigen::MatrixXd::Constant(2, 2, 3.0);
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(2, 2);
    Eigen::MatrixXd vel = Eigen::MatrixXd::Zero(2, 2);
    std::vector<ParamRef> p{{"theta", &theta}};
    std::vector<ParamRef> g{{"theta", &grad}};
    std::vector<ParamRef> v{{"theta", &vel}};
    sgd_momentum_step(p, g, v, cfg);
    CHECK((theta.array() == 3.0).all());
}

TEST_CASE("non-finite gradients are rejected") {
    TrainConfig cfg;
    Eigen::MatrixXd theta = Eigen::MatrixXd::Zero(1, 1);
    Eigen::MatrixXd grad =
        Eigen::MatrixXd::Constant(1, 1, std::numeric_limits<double>::quiet_NaN());
    Eigen::MatrixXd vel = Eigen::MatrixXd::Zero(1, 1);
    std::vector<ParamRef> p{{"theta", &theta}};
    std::vector<ParamRef> g{{"theta", &grad}};
    std::vector<ParamRef> v{{"theta", &vel}};
    CHECK_THROWS(sgd_momentum_step(p, g, v, cfg));
}

TEST_CASE("mean squared error examples") {
    CHECK(mse_loss(Vec3(1.0, 1.0, 1.0), Vec3(1.0, 1.0, 1.0)) == 0.0);
    CHECK(mse_loss(Vec3(2.0, 0.0, 0.0), Vec3::Zero()) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    const Vec3 a(0.3, -1.0, 2.0), b(1.1, 0.4, -0.2);
    CHECK(mse_loss(a, b) == doctest::Approx(mse_loss(b, a)).epsilon(1e-15));
}

TEST_CASE("finite differences recover an analytic derivative") {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Constant(1, 1, 3.0);
    std::vector<ParamRef> p{{"theta", &theta}};
    auto loss = [&]() { return theta(0, 0) * theta(0, 0); };

    const double eps = 1e-5;
    auto g = finite_diff_grad(loss, p, eps);
    CHECK(g[0](0, 0) == doctest::Approx(6.0).epsilon(1e-9));
    CHECK(theta(0, 0) == 3.0);  // restored exactly
}

TEST_CASE("halving eps shrinks the mismatch roughly quadratically") {
    Eigen::MatrixXd theta = Eigen::MatrixXd::Constant(1, 1, 0.7);
    std::vector<ParamRef> p{{"theta", &theta}};
    auto loss = [&]() { return std::exp(theta(0, 0)); };
    const double exact = std::exp(0.7);

    const double e1 = std::abs(finite_diff_grad(loss, p, 1e-3)[0](0, 0) - exact);
    const double e2 = std::abs(finite_diff_grad(loss, p, 5e-4)[0](0, 0) - exact);
    CHECK(e2 < e1 / 3.0);
    CHECK(e2 > e1 / 5.0);
}

TEST_CASE("training identifies a noise-free linear map") {
    // Records follow F = 0.05 q + 1 exactly along smooth trajectories;
    // validation error must approach zero well within 50 epochs.
    Dataset d;
    for (int i = 0; i < 4000; ++i) {
        const double t = i * 0.01;
        const Vec3 q(25.0 + 8.0 * std::sin(0.9 * t) + 3.0 * std::sin(2.3 * t),
                     24.0 + 7.0 * std::sin(1.3 * t + 1.0),
                     26.0 + 6.0 * std::sin(0.7 * t + 2.0) +
                         2.0 * std::sin(3.1 * t));
        d.records.push_back({t, q, 0.05 * q + Vec3::Constant(1.0), 0});
    }

    ModelSpec spec;
    spec.kind = ModelKind::kLstm;
    spec.hidden = 16;
    spec.window_len = 10;
    TrainConfig cfg;
    cfg.epochs = 50;
    cfg.batches_per_epoch = 1000;
    cfg.rng_seed = 4;
    const SequenceModel m = train(spec, d, cfg);
    CHECK(m.history.back().val_error < 1e-2);
}

TEST_CASE("evaluate reports a constant offset exactly") {
    Dataset d;
    for (int i = 0; i < 500; ++i)
        d.records.push_back({i * 0.01, Vec3::Constant(20.0 + 0.01 * i),
                             Vec3::Constant(5.0), 0});
    ModelSpec spec;
    spec.hidden = 4;
    spec.window_len = 5;
    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.batches_per_epoch = 1;
    SequenceModel m = train(spec, d, cfg);
    // Force a constant prediction of 5.3 N through the head bias.
    m.lstm.w_fc2.setZero();
    for (auto& wq : m.lstm.w_q) wq.setZero();
    m.lstm.b_fc2 = m.norm.normalize_out(Vec3::Constant(5.3));
    CHECK(evaluate(m, d, 7) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("train config validation") {
    TrainConfig cfg;
    cfg.learning_rate = 0.0;
    CHECK_THROWS(cfg.validate());
    cfg = TrainConfig{};
    cfg.batch_size = 0;
    CHECK_THROWS(cfg.validate());
}
