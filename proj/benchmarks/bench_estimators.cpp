#include <benchmark/benchmark.h>

#include <pfopt/estimators.hpp>
#include <pfopt/simulation.hpp>

using namespace pfopt;

namespace {

void BM_ledoit_wolf(benchmark::State& state) {
    const auto p = static_cast<Eigen::Index>(state.range(0));
    const SimulatedMarket mkt = constant_corr_market(1, 0.3, 500, p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ledoit_wolf_shrinkage(mkt.returns));
    }
}

void BM_sample_cov(benchmark::State& state) {
    const auto p = static_cast<Eigen::Index>(state.range(0));
    const SimulatedMarket mkt = constant_corr_market(1, 0.3, 500, p);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_cov(mkt.returns));
    }
}

}  // namespace

BENCHMARK(BM_ledoit_wolf)->Arg(50)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_sample_cov)->Arg(50)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);
