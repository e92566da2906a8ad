#include <benchmark/benchmark.h>

#include <pfopt/rng.hpp>
#include <pfopt/sorted_l1.hpp>

using namespace pfopt;

namespace {

Vector random_vec(Rng& rng, Eigen::Index k) {
    Vector v(k);
    for (Eigen::Index i = 0; i < k; ++i) v[i] = rng.next_normal();
    return v;
}

void BM_prox_sorted_l1(benchmark::State& state) {
    const auto k = static_cast<Eigen::Index>(state.range(0));
    Rng rng(1, 0);
    const Vector y = random_vec(rng, k);
    const LambdaSequence lambda = bh_lambda_sequence(k, 0.01, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(prox_sorted_l1(y, lambda));
    }
    state.SetComplexityN(state.range(0));
}

void BM_dual_sorted_l1_norm(benchmark::State& state) {
    const auto k = static_cast<Eigen::Index>(state.range(0));
    Rng rng(2, 0);
    const Vector a = random_vec(rng, k);
    const LambdaSequence lambda = bh_lambda_sequence(k, 0.01, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dual_sorted_l1_norm(a, lambda));
    }
}

}  // namespace

BENCHMARK(BM_prox_sorted_l1)->RangeMultiplier(4)->Range(16, 4096)->Complexity();
BENCHMARK(BM_dual_sorted_l1_norm)->RangeMultiplier(4)->Range(16, 4096);
