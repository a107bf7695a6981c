#include <benchmark/benchmark.h>

#include <random>

#include "tendon/loess.hpp"
#include "tendon/lstm.hpp"
#include "tendon/plant.hpp"

using namespace tendon;

static void BM_PlantStep(benchmark::State& state) {
    Plant plant(PlantConfig::defaults());
    Vec3 q = Vec3::Constant(25.0);
    plant.reset(q);
    for (auto _ : state) {
        q.array() += 0.01;
        if (q[0] > 40.0) q.setConstant(25.0);
        benchmark::DoNotOptimize(plant.step(ActuatorCommand{q}));
    }
}
BENCHMARK(BM_PlantStep);

static void BM_LstmForward(benchmark::State& state) {
    const int hidden = static_cast<int>(state.range(0));
    const int window = static_cast<int>(state.range(1));
    std::mt19937_64 rng(1);
    LstmParams p = LstmParams::init(hidden, rng);
    std::normal_distribution<double> nd(0.0, 1.0);
    Eigen::Matrix3Xd w(3, window);
    w = w.unaryExpr([&](double) { return nd(rng); });
    for (auto _ : state) benchmark::DoNotOptimize(lstm_forward(p, w));
}
BENCHMARK(BM_LstmForward)->Args({32, 100})->Args({64, 200});

static void BM_LoessQuery(benchmark::State& state) {
    TensionSurface s;
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-12.0, 12.0);
    s.dedup_tol = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng), y = u(rng);
        s.add_sample(x, y, 60.0 + 0.5 * x - 0.25 * y);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(loess_query(s, u(rng), u(rng)));
    }
}
BENCHMARK(BM_LoessQuery);

BENCHMARK_MAIN();
