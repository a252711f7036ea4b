#include <benchmark/benchmark.h>

#include <cmath>

#include "qwalk/open_walk.hpp"

namespace {

using qwalk::CoinOperator;
using qwalk::Complex;
using qwalk::NoiseModel;
using qwalk::WalkState;

void BM_DensityRun(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    const double s = 1.0 / std::sqrt(2.0);
    const WalkState initial =
        WalkState::point(0, n, Complex(s, 0.0), Complex(0.0, s));
    NoiseModel noise;
    noise.coin_dephasing_prob = 0.05;
    noise.position_measure_prob = 0.02;
    for (auto _ : state) {
        const auto result = qwalk::run_open(initial, n, CoinOperator::hadamard(), noise);
        benchmark::DoNotOptimize(result.distribution.probabilities.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DensityRun)->Arg(25)->Arg(50)->Arg(100)->Complexity()->Unit(benchmark::kMillisecond);

void BM_TrajectoryRun(benchmark::State& state) {
    const std::int64_t n = 10;
    const double s = 1.0 / std::sqrt(2.0);
    const WalkState initial =
        WalkState::point(0, n, Complex(s, 0.0), Complex(0.0, s));
    NoiseModel noise;
    noise.coin_dephasing_prob = 0.3;
    for (auto _ : state) {
        const auto d = qwalk::trajectory_run(initial, n, CoinOperator::hadamard(), noise,
                                             state.range(0), 42);
        benchmark::DoNotOptimize(d.probabilities.data());
    }
}
BENCHMARK(BM_TrajectoryRun)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace
