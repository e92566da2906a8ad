#include <benchmark/benchmark.h>

#include <pfopt/estimators.hpp>
#include <pfopt/simulation.hpp>
#include <pfopt/solver.hpp>

using namespace pfopt;

namespace {

// The Appendix comparison instance class: constant-correlation draws run
// through the shrinkage estimator, lasso penalty, phi = 2 objective.
void BM_admm_lasso(benchmark::State& state) {
    const auto p = static_cast<Eigen::Index>(state.range(0));
    const SimulatedMarket mkt = constant_corr_market(1, 0.2, 2 * p > 500 ? 2 * p : 500, p);
    const Matrix sigma = ledoit_wolf_shrinkage(mkt.returns).matrix;
    const AdmmSolver solver(sigma, 2.0, 1.0);
    const LambdaSequence lambda = LambdaSequence::constant(p, 7.91e-2);
    SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solver.solve(Vector::Zero(p), lambda, false, cfg));
    }
}

void BM_cycode_lasso(benchmark::State& state) {
    const auto p = static_cast<Eigen::Index>(state.range(0));
    const SimulatedMarket mkt = constant_corr_market(1, 0.2, 2 * p > 500 ? 2 * p : 500, p);
    const Matrix sigma = ledoit_wolf_shrinkage(mkt.returns).matrix;
    const SolverProblem problem{sigma, Vector::Zero(p), 2.0,
                                LambdaSequence::constant(p, 7.91e-2), false};
    SolverConfig cfg;
    for (auto _ : state) {
        benchmark::DoNotOptimize(cycode_solve(problem, cfg));
    }
}

void BM_admm_slope_warmstarted_grid(benchmark::State& state) {
    const SimulatedMarket mkt = hidden_factor_market(1);
    const Matrix sigma = sample_cov(mkt.returns).matrix;
    const Vector grid = log_grid(1e-5, 1e2, static_cast<Eigen::Index>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sweep_penalty_path({sigma, Vector::Zero(12), {}, {}, 1.0},
                                                    grid, {PenaltyFamily::Slope, false, 0.01},
                                                    {}));
    }
}

}  // namespace

BENCHMARK(BM_admm_lasso)->Arg(50)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_cycode_lasso)->Arg(50)->Arg(100)->Arg(250)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_admm_slope_warmstarted_grid)->Arg(25)->Arg(100)->Unit(benchmark::kMillisecond);
