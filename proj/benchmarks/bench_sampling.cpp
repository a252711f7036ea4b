#include <benchmark/benchmark.h>

#include <cmath>

#include "qwalk/apparatus.hpp"
#include "qwalk/walk_state.hpp"

namespace {

using qwalk::Complex;
using qwalk::WalkState;

void BM_SampleMeasurement(benchmark::State& state) {
    const double s = 1.0 / std::sqrt(2.0);
    WalkState walk = WalkState::point(0, 110, Complex(s, 0.0), Complex(0.0, s));
    walk.evolve(100, qwalk::CoinOperator::hadamard());
    const qwalk::Distribution d = walk.distribution();
    for (auto _ : state) {
        const auto record = qwalk::sample_measurement(d, state.range(0), 7);
        benchmark::DoNotOptimize(record.outcomes.data());
    }
}
BENCHMARK(BM_SampleMeasurement)->Arg(10000)->Arg(1000000)->Unit(benchmark::kMillisecond);

void BM_EstimateDistribution(benchmark::State& state) {
    const double s = 1.0 / std::sqrt(2.0);
    WalkState walk = WalkState::point(0, 110, Complex(s, 0.0), Complex(0.0, s));
    walk.evolve(100, qwalk::CoinOperator::hadamard());
    const auto record = qwalk::sample_measurement(walk.distribution(), state.range(0), 7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qwalk::estimate_distribution(record).probabilities.data());
    }
}
BENCHMARK(BM_EstimateDistribution)->Arg(1000000)->Unit(benchmark::kMillisecond);

} // namespace
