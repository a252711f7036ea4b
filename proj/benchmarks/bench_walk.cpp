#include <benchmark/benchmark.h>

#include <cmath>

#include "qwalk/walk_state.hpp"

namespace {

using qwalk::CoinOperator;
using qwalk::Complex;
using qwalk::WalkState;

WalkState symmetric_start(std::int64_t half_width) {
    const double s = 1.0 / std::sqrt(2.0);
    return WalkState::point(0, half_width, Complex(s, 0.0), Complex(0.0, s));
}

void BM_PureWalkEvolve(benchmark::State& state) {
    const auto n = static_cast<std::int64_t>(state.range(0));
    const CoinOperator coin = CoinOperator::hadamard();
    for (auto _ : state) {
        WalkState walk = symmetric_start(n);
        walk.evolve(n, coin);
        benchmark::DoNotOptimize(walk.norm_squared());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PureWalkEvolve)->RangeMultiplier(4)->Range(256, 16384)->Complexity();

void BM_SingleStepFullLattice(benchmark::State& state) {
    const auto half_width = static_cast<std::int64_t>(state.range(0));
    WalkState walk = WalkState::gaussian(0, half_width + 8,
                                         static_cast<double>(half_width) / 8.0,
                                         half_width, Complex(1.0, 0.0),
                                         Complex(0.0, 0.0));
    const CoinOperator coin = CoinOperator::hadamard();
    for (auto _ : state) {
        walk.step(coin);
        benchmark::DoNotOptimize(walk.amplitude(0, 0));
        state.PauseTiming();
        walk = WalkState::gaussian(0, half_width + 8,
                                   static_cast<double>(half_width) / 8.0, half_width,
                                   Complex(1.0, 0.0), Complex(0.0, 0.0));
        state.ResumeTiming();
    }
}
BENCHMARK(BM_SingleStepFullLattice)->Arg(1024)->Arg(8192);

void BM_DistributionMoments(benchmark::State& state) {
    WalkState walk = symmetric_start(4096);
    walk.evolve(4096, CoinOperator::hadamard());
    for (auto _ : state) {
        benchmark::DoNotOptimize(qwalk::moments(walk.distribution()).variance);
    }
}
BENCHMARK(BM_DistributionMoments);

} // namespace

BENCHMARK_MAIN();
