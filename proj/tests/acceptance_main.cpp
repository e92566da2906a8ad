// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Criterion 13 needs user-supplied market data and reports
// deviations without failing; it prints SKIP when the file is absent.
//
// Run all criteria with no arguments, or pass criterion numbers to run a
// subset, e.g. `pfopt_acceptance 4 9`.

#include <pfopt/backtest.hpp>
#include <pfopt/cli/commands.hpp>
#include <pfopt/cli/config.hpp>
#include <pfopt/cli/ingest.hpp>
#include <pfopt/csv.hpp>
#include <pfopt/estimators.hpp>
#include <pfopt/parallel.hpp>
#include <pfopt/rng.hpp>
#include <pfopt/simulation.hpp>
#include <pfopt/solver.hpp>
#include <pfopt/stats.hpp>
#include <pfopt/strategies.hpp>

#include "qp_oracle.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

using namespace pfopt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    bool skipped = false;
    std::string detail;
};

Vector random_vec(Rng& rng, Eigen::Index k, double scale = 1.0) {
    Vector v(k);
    for (Eigen::Index i = 0; i < k; ++i) v[i] = scale * rng.next_normal();
    return v;
}

LambdaSequence random_lambda(Rng& rng, Eigen::Index k, double scale) {
    Vector raw(k);
    for (Eigen::Index i = 0; i < k; ++i) raw[i] = scale * std::abs(rng.next_normal());
    std::sort(raw.data(), raw.data() + k, std::greater<double>());
    return LambdaSequence(raw);
}

Matrix random_pd(Rng& rng, Eigen::Index k, double ridge = 0.3) {
    Matrix a(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) a(i, j) = rng.next_normal();
    Matrix s = a * a.transpose() / static_cast<double>(k);
    s += ridge * Matrix::Identity(k, k);
    return 0.5 * (s + s.transpose());
}

// ---------------------------------------------------------------------------
// 1. prox_sorted_l1 vs the cutting-plane QP oracle, 1000 pairs, k <= 8.
Outcome criterion1() {
    Rng rng(1001, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next_u64() % 8);
        const Vector y = random_vec(rng, k, 2.0);
        const LambdaSequence lambda = random_lambda(rng, k, 1.0);
        const Vector mine = prox_sorted_l1(y, lambda);
        const Vector oracle = testing::prox_oracle(y, lambda);
        worst = std::max(worst, (mine - oracle).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-6, false, "max |prox - oracle| = " + csv::format_double(worst)};
}

// 2. constant-lambda prox equals soft thresholding, 1000 vectors, k <= 64.
Outcome criterion2() {
    Rng rng(1002, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const Eigen::Index k = 1 + static_cast<Eigen::Index>(rng.next_u64() % 64);
        const double lam = std::abs(rng.next_normal());
        const Vector y = random_vec(rng, k, 2.0);
        const Vector v = prox_sorted_l1(y, LambdaSequence::constant(k, lam));
        for (Eigen::Index i = 0; i < k; ++i) {
            const double st = (y[i] > lam) ? y[i] - lam : (y[i] < -lam ? y[i] + lam : 0.0);
            worst = std::max(worst, std::abs(v[i] - st));
        }
    }
    return {worst <= 1e-10, false, "max |prox - soft threshold| = " + csv::format_double(worst)};
}

// 3. ADMM with zero penalty recovers the closed-form GMV on 100 instances.
Outcome criterion3() {
    Rng rng(1003, 0);
    double worst_w = 0.0, worst_gap = 0.0, worst_budget = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.next_u64() % 49);
        const Matrix sigma = random_pd(rng, k);
        SolverProblem p{sigma, Vector::Zero(k), 1.0, LambdaSequence::zero(k), false};
        SolverConfig cfg;
        cfg.tol = 1e-12;
        const SolverSolution sol = admm_solve(p, cfg);
        if (!sol.converged) return {false, false, "instance did not converge"};
        worst_gap = std::max(worst_gap, sol.gap);
        worst_budget = std::max(worst_budget, std::abs(sol.w.sum() - 1.0));
        worst_w = std::max(worst_w, (sol.w - gmv_closed_form(sigma)).cwiseAbs().maxCoeff());
    }
    const bool pass = worst_w <= 1e-5 && worst_gap <= 1e-7 && worst_budget <= 1e-8;
    return {pass, false,
            "max |w - gmv| = " + csv::format_double(worst_w) +
                ", max gap = " + csv::format_double(worst_gap) +
                ", max budget residual = " + csv::format_double(worst_budget)};
}

// 4. ADMM and CyCoDe agree on the Table-5 instance class; medians anchored.
Outcome criterion4(unsigned threads) {
    constexpr int kSeeds = 100;
    struct Row {
        double admm_obj, cyco_obj, admm_short;
    };
    std::vector<Row> at_low(kSeeds), at_high(kSeeds);

    parallel_for(
        kSeeds,
        [&](std::size_t i) {
            const SimulatedMarket mkt =
                constant_corr_market(1 + static_cast<std::uint64_t>(i), 0.2, 500, 100);
            const Matrix sigma = ledoit_wolf_shrinkage(mkt.returns).matrix;
            const AdmmSolver solver(sigma, 2.0, 1.0);
            SolverConfig cfg;
            cfg.tol = 1e-7;
            for (int which = 0; which < 2; ++which) {
                const double lam = which == 0 ? 4.03e-6 : 7.91e-2;
                const LambdaSequence penalty = LambdaSequence::constant(100, lam);
                const SolverSolution admm =
                    solver.solve(Vector::Zero(100), penalty, false, cfg);
                const SolverProblem p{sigma, Vector::Zero(100), 2.0, penalty, false};
                const SolverSolution cyco = cycode_solve(p, cfg);
                Row& row = (which == 0 ? at_low : at_high)[i];
                row.admm_obj = admm.objective;
                row.cyco_obj = cyco.objective;
                row.admm_short = shorting_amount(admm.v);
            }
        },
        threads);

    double max_dobj = 0.0;
    std::vector<double> low_obj, high_obj, low_short, high_short;
    for (int i = 0; i < kSeeds; ++i) {
        max_dobj = std::max(max_dobj, std::abs(at_low[i].admm_obj - at_low[i].cyco_obj));
        max_dobj = std::max(max_dobj, std::abs(at_high[i].admm_obj - at_high[i].cyco_obj));
        low_obj.push_back(at_low[i].admm_obj);
        high_obj.push_back(at_high[i].admm_obj);
        low_short.push_back(at_low[i].admm_short);
        high_short.push_back(at_high[i].admm_short);
    }
    const double med_low = median_of(low_obj);
    const double med_high = median_of(high_obj);
    const double med_low_short = median_of(low_short);
    const double med_high_short = median_of(high_short);

    const bool pass = max_dobj <= 1e-4 && std::abs(med_high - 0.25) <= 0.03 &&
                      med_high_short <= 1e-6 && std::abs(med_low - 0.16) <= 0.03 &&
                      std::abs(med_low_short - 0.51) <= 0.15;
    std::ostringstream detail;
    detail << "max |dObj| = " << csv::format_double(max_dobj)
           << "; med obj " << csv::format_double(med_low) << " (target 0.16+-0.03), "
           << csv::format_double(med_high) << " (target 0.25+-0.03); med short "
           << csv::format_double(med_low_short) << " (target 0.51+-0.15), "
           << csv::format_double(med_high_short) << " (target <= 1e-6)";
    return {pass, false, detail.str()};
}

// 5. Long-only SLOPE ADMM vs the dense constrained-QP oracle, 200 instances.
Outcome criterion5() {
    Rng rng(1005, 0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const Eigen::Index k = 3 + static_cast<Eigen::Index>(rng.next_u64() % 8);
        const Matrix sigma = random_pd(rng, k);
        const Vector mu = random_vec(rng, k, 0.05);
        const LambdaSequence lambda = random_lambda(rng, k, 0.2);
        SolverProblem p{sigma, mu, 1.0, lambda, true};
        SolverConfig cfg;
        cfg.tol = 1e-12;
        cfg.max_iter = 200000;
        const SolverSolution sol = admm_solve(p, cfg);
        if (!sol.converged) return {false, false, "instance did not converge"};
        const Vector oracle = testing::slope_lo_oracle(sigma, mu, 1.0, lambda);
        worst = std::max(worst, (sol.w - oracle).cwiseAbs().maxCoeff());
    }
    return {worst <= 1e-5, false, "max |w - oracle| = " + csv::format_double(worst)};
}

// Shared 200-seed hidden-factor batch for criteria 6, 7, 8 and the
// hidden-factor half of 9.
struct HiddenFactorBatch {
    std::vector<bool> grouped;        // criterion 6 per seed
    std::vector<double> ew_gaps;      // criterion 7 per seed
    std::vector<double> gmv_ratios;   // criterion 8 per seed
    long bounds_total = 0;            // criterion 9 counters (minvar + meanvar)
    long bounds_passed = 0;
};

HiddenFactorBatch hidden_factor_batch(unsigned threads) {
    constexpr int kSeeds = 200;
    const Vector grid = log_grid(1e-5, 1e2, 100);

    struct SeedOut {
        bool grouped = false;
        double ew_gap = 0.0;
        double ratio = 0.0;
        long total = 0;
        long passed = 0;
    };
    std::vector<SeedOut> outs(kSeeds);

    parallel_for(
        kSeeds,
        [&](std::size_t i) {
            const SimulatedMarket mkt =
                hidden_factor_market(1 + static_cast<std::uint64_t>(i));
            const Matrix sigma_hat = sample_cov(mkt.returns).matrix;
            SeedOut& out = outs[i];

            for (int mode = 0; mode < 2; ++mode) {
                FrontierSpec spec;
                spec.use_estimated_mean = (mode == 1);
                const FrontierProfile f = frontier_sweep(mkt, grid, spec, {});

                if (mode == 0) {
                    // 6: oracle solution groups into the three loading blocks
                    for (const FrontierPoint& pt : f.points) {
                        const auto groups = extract_groups(pt.weights_oracle, 1e-6);
                        if (groups.size() != 3) continue;
                        bool blocks = true;
                        for (const auto& g : groups) {
                            if (g.size() != 4 || g[0] % 4 != 0) blocks = false;
                            else
                                for (int j = 0; j < 4; ++j)
                                    if (g[static_cast<std::size_t>(j)] != g[0] + j)
                                        blocks = false;
                        }
                        if (blocks) {
                            out.grouped = true;
                            break;
                        }
                    }
                    // 7: estimated solution at the top scale vs equal weights
                    out.ew_gap = (f.points.back().weights.array() - 1.0 / 12.0)
                                     .abs()
                                     .maxCoeff();
                    // 8: actual / empirical risk of the unpenalized reference
                    out.ratio = f.gmv.risk_actual / f.gmv.risk_empirical;
                }
                // 9: the three risk-bound inequalities at every grid point
                for (const FrontierPoint& pt : f.points) {
                    const LambdaSequence lambda = penalty_for_scale(
                        12, pt.lambda_scale, {spec.family, spec.nonneg, spec.q});
                    const RiskBoundReport rep =
                        verify_risk_bounds(pt.weights_budget, pt.weights_oracle,
                                           mkt.sigma_true.matrix, sigma_hat, lambda);
                    if (!rep.applicable) continue;
                    ++out.total;
                    if (rep.all_pass()) ++out.passed;
                }
            }
        },
        threads);

    HiddenFactorBatch batch;
    for (const SeedOut& out : outs) {
        batch.grouped.push_back(out.grouped);
        batch.ew_gaps.push_back(out.ew_gap);
        batch.gmv_ratios.push_back(out.ratio);
        batch.bounds_total += out.total;
        batch.bounds_passed += out.passed;
    }
    return batch;
}

Outcome criterion6(const HiddenFactorBatch& batch) {
    long hits = 0;
    for (const bool g : batch.grouped) hits += g;
    const double frac = static_cast<double>(hits) / static_cast<double>(batch.grouped.size());
    return {frac >= 0.95, false,
            "three groups of four recovered in " + csv::format_double(100.0 * frac) +
                "% of seeds"};
}

Outcome criterion7(const HiddenFactorBatch& batch) {
    const double worst = *std::max_element(batch.ew_gaps.begin(), batch.ew_gaps.end());
    return {worst <= 1e-3, false,
            "max |w - e/12| at the top scale = " + csv::format_double(worst)};
}

Outcome criterion8(const HiddenFactorBatch& batch) {
    const double med = median_of(batch.gmv_ratios);
    return {med >= 1.1 && med <= 1.6, false,
            "median actual/empirical ratio = " + csv::format_double(med) +
                " (required band [1.1, 1.6])"};
}

Outcome criterion9(const HiddenFactorBatch& batch, unsigned threads) {
    long total = batch.bounds_total;
    long passed = batch.bounds_passed;

    // Calibrated design, both grids, one seed per mode.
    struct ModeOut {
        long total = 0, passed = 0;
    };
    std::vector<ModeOut> outs(2);
    parallel_for(
        2,
        [&](std::size_t mode) {
            const SimulatedMarket mkt = calibrated_market(1 + static_cast<std::uint64_t>(mode));
            const Matrix sigma_hat = sample_cov(mkt.returns).matrix;
            FrontierSpec spec;
            spec.use_estimated_mean = (mode == 1);
            const Vector grid = (mode == 0)
                                    ? log_grid(1e-8, std::pow(10.0, -1.5), 100)
                                    : log_grid(1e-4, std::pow(10.0, -1.5), 100);
            const FrontierProfile f = frontier_sweep(mkt, grid, spec, {});
            for (const FrontierPoint& pt : f.points) {
                const LambdaSequence lambda = penalty_for_scale(
                    500, pt.lambda_scale, {spec.family, spec.nonneg, spec.q});
                const RiskBoundReport rep =
                    verify_risk_bounds(pt.weights_budget, pt.weights_oracle,
                                       mkt.sigma_true.matrix, sigma_hat, lambda);
                if (!rep.applicable) continue;
                ++outs[mode].total;
                if (rep.all_pass()) ++outs[mode].passed;
            }
        },
        threads);
    for (const ModeOut& out : outs) {
        total += out.total;
        passed += out.passed;
    }

    return {passed == total, false,
            std::to_string(passed) + " / " + std::to_string(total) +
                " bound triples hold (hidden-factor and calibrated, min- and mean-variance)"};
}

// 10. Constant-lambda sorted-l1 norm on exactly representable simplex points.
Outcome criterion10() {
    Rng rng(1010, 0);
    double worst_ulps = 0.0;
    int checked = 0;
    while (checked < 1000) {
        const Eigen::Index k = 2 + static_cast<Eigen::Index>(rng.next_u64() % 63);
        std::vector<std::uint64_t> raw(static_cast<std::size_t>(k));
        std::uint64_t total = 0;
        for (auto& x : raw) {
            x = rng.next_u64() % 1024;
            total += x;
        }
        if (total == 0) continue;
        Vector w(k);
        std::uint64_t assigned = 0;
        const std::uint64_t N = 1u << 20;
        for (Eigen::Index i = 0; i < k; ++i) {
            const std::uint64_t share =
                (i + 1 < k) ? (raw[static_cast<std::size_t>(i)] * N) / total : N - assigned;
            assigned += share;
            w[i] = static_cast<double>(share) / static_cast<double>(N);
        }
        const double lam = std::ldexp(static_cast<double>(1 + rng.next_u64() % 255), -7);
        const double norm = sorted_l1_norm(w, LambdaSequence::constant(k, lam));
        worst_ulps = std::max(worst_ulps, std::abs(norm - lam) / std::ldexp(std::abs(lam), -52));
        ++checked;
    }
    return {worst_ulps <= 1.0, false,
            "max deviation = " + csv::format_double(worst_ulps) + " ulp"};
}

// 11. Metric identities.
Outcome criterion11() {
    std::ostringstream detail;
    bool pass = true;

    {
        const Matrix sigma = 0.04 * Matrix::Identity(4, 4);
        const Vector ew = Vector::Constant(4, 0.25);
        const DiversificationMetrics m = diversification_metrics(ew, sigma);
        pass = pass && std::abs(m.wdiv - 1.0) <= 1e-12 && std::abs(m.dr - 2.0) <= 1e-10;
        detail << "EW WDiv = " << csv::format_double(m.wdiv)
               << ", DR on 4 uncorrelated equal-vol = " << csv::format_double(m.dr);
        const std::vector<Vector> history(4, ew);
        pass = pass && turnover(history) == 0.0;
    }
    {
        Vector w = Vector::Zero(5);
        w[1] = 1.0;
        const DiversificationMetrics m = diversification_metrics(w, Matrix::Identity(5, 5));
        pass = pass && std::abs(m.dr - 1.0) <= 1e-12 && std::abs(m.wdiv - 0.2) <= 1e-12 &&
               std::abs(m.rdiv - 0.2) <= 1e-12;
        detail << "; single-asset DR = " << csv::format_double(m.dr)
               << ", WDiv = " << csv::format_double(m.wdiv)
               << ", RDiv = " << csv::format_double(m.rdiv);
    }
    {
        Matrix sigma(4, 4);
        sigma << 0.04, 0.012, 0.0, -0.004, 0.012, 0.09, 0.01, 0.0, 0.0, 0.01, 0.02, 0.002,
            -0.004, 0.0, 0.002, 0.06;
        const Allocation erc = erc_solve(sigma);
        const DiversificationMetrics m = diversification_metrics(erc.weights, sigma);
        const Vector sw = sigma * erc.weights;
        const double var = erc.weights.dot(sw);
        double max_dev = 0.0;
        for (Eigen::Index i = 0; i < 4; ++i)
            max_dev = std::max(max_dev,
                               std::abs(erc.weights[i] * sw[i] / var - 0.25));
        pass = pass && std::abs(m.rdiv - 1.0) <= 1e-6 && max_dev <= 1e-6;
        detail << "; ERC RDiv = " << csv::format_double(m.rdiv)
               << ", max RC deviation = " << csv::format_double(max_dev);
    }
    return {pass, false, detail.str()};
}

// 12. Backtest protocol arithmetic and net-Sharpe monotonicity.
Outcome criterion12() {
    Rng rng(1012, 0);
    const Eigen::Index tau = 60, k = 8, reb = 1;
    const Eigen::Index T = tau + 10 * reb;
    Matrix values(T, k);
    for (Eigen::Index t = 0; t < T; ++t) {
        const double common = 0.01 * rng.next_normal();
        for (Eigen::Index j = 0; j < k; ++j)
            values(t, j) = 0.004 + common * (0.6 + 0.1 * static_cast<double>(j)) +
                           0.02 * rng.next_normal();
    }
    ReturnsMatrix R;
    R.values = values;
    for (Eigen::Index t = 0; t < T; ++t) {
        std::string s = std::to_string(t + 1);
        R.dates.push_back(std::string(6 - std::min<std::size_t>(6, s.size()), '0') + s);
    }
    for (Eigen::Index j = 0; j < k; ++j) R.tickers.push_back("A" + std::to_string(j));

    BacktestConfig cfg;
    cfg.window = tau;
    cfg.rebalance_period = reb;
    cfg.periods_per_year = 12;
    cfg.grid = log_grid(std::pow(10.0, -7.5), 10.0, 50);
    cfg.tc_bps = {0.0, 35.0, 50.0};
    for (StrategyKind kind : {StrategyKind::EW, StrategyKind::GMV, StrategyKind::GMV_LO,
                              StrategyKind::ERC, StrategyKind::RIDGE, StrategyKind::LASSO,
                              StrategyKind::SLOPE, StrategyKind::SLOPE_LO,
                              StrategyKind::SLOPE_MV})
        cfg.strategies.push_back({kind});

    const BacktestReport rep = run_backtest(R, cfg);
    bool pass = rep.oos_count == 10;
    bool monotone = true;
    for (const StrategyReport& sr : rep.strategies) {
        pass = pass && sr.returns.size() == 10;
        monotone = monotone && sr.tc[0].sharpe_ann >= sr.tc[1].sharpe_ann - 1e-12 &&
                   sr.tc[1].sharpe_ann >= sr.tc[2].sharpe_ann - 1e-12;
    }
    return {pass && monotone, false,
            std::string("10 OOS entries for all 9 strategies; net Sharpe ") +
                (monotone ? "nonincreasing" : "NOT monotone") + " across {0, 35, 50} bps"};
}

// 13. Optional Kenneth-French 10-Industry check (data-dependent).
Outcome criterion13() {
    const char* env = std::getenv("PFOPT_DATA_DIR");
    std::vector<fs::path> candidates;
    if (env) candidates.push_back(fs::path(env) / "10ind_monthly.csv");
    candidates.push_back("data/10ind_monthly.csv");
    fs::path found;
    for (const fs::path& p : candidates)
        if (fs::exists(p)) {
            found = p;
            break;
        }
    if (found.empty())
        return {true, true,
                "no 10-Industry CSV found (set PFOPT_DATA_DIR or add data/10ind_monthly.csv)"};

    cli::IngestOptions opt;
    opt.percent_units = true;
    const ReturnsMatrix R = cli::ingest_returns(found, opt);

    BacktestConfig cfg;
    cfg.window = 120;
    cfg.rebalance_period = 1;
    cfg.periods_per_year = 12;
    cfg.grid = log_grid(std::pow(10.0, -7.5), 10.0, 100);
    cfg.tc_bps = {0.0};
    cfg.strategies = {{StrategyKind::EW}};
    const BacktestReport rep = run_backtest(R, cfg);
    const double vol = 100.0 * rep.strategies[0].oos.vol_ann;
    const double sr = rep.strategies[0].oos.sharpe_ann;
    std::ostringstream detail;
    detail << "EW vol " << csv::format_double(vol) << "% (published 14.489 +- 0.5), SR "
           << csv::format_double(sr) << " (published 0.780 +- 0.05)";
    if (std::abs(vol - 14.489) > 0.5 || std::abs(sr - 0.780) > 0.05)
        detail << " -- deviation beyond tolerance, reported not failed (data revisions)";
    return {true, false, detail.str()};
}

// 14. Manifest determinism for every command.
Outcome criterion14() {
    const fs::path root = fs::temp_directory_path() / "pfopt_acceptance14";
    fs::remove_all(root);
    fs::create_directories(root);

    // small panel file for the data-driven commands
    {
        Rng rng(1014, 0);
        std::ofstream out(root / "panel.csv", std::ios::binary);
        out << "date,A,B,C,D\n";
        for (int t = 0; t < 70; ++t) {
            out << 200000 + t;
            for (int j = 0; j < 4; ++j) out << ',' << 0.01 * rng.next_normal();
            out << '\n';
        }
    }
    {
        std::ofstream out(root / "cov.csv", std::ios::binary);
        out << "A,B,C\n0.04,0.01,0\n0.01,0.09,0.002\n0,0.002,0.02\n";
    }

    using cli::Json;
    std::vector<cli::RunConfig> configs;
    {
        cli::RunConfig c;
        c.command = "solve";
        c.params = Json{{"covariance_csv", (root / "cov.csv").string()},
                        {"penalty", {{"family", "slope"}, {"lambda1", 0.05}}}};
        configs.push_back(c);
        c.command = "frontier";
        c.params = Json{{"returns_csv", (root / "panel.csv").string()},
                        {"family", "slope"},
                        {"grid", {{"lo", 1e-6}, {"hi", 10.0}, {"n", 20}}}};
        configs.push_back(c);
        c.command = "simulate";
        c.seed = 7;
        c.params = Json{{"design", "hidden-factor"},
                        {"mode", "minvar"},
                        {"family", "slope"},
                        {"grid", {{"lo", 1e-5}, {"hi", 1e2}, {"n", 20}}}};
        configs.push_back(c);
        c.command = "backtest";
        c.params = Json{{"returns_csv", (root / "panel.csv").string()},
                        {"window", 50},
                        {"strategies", {"EW", "GMV", "SLOPE"}},
                        {"grid", {{"lo", 1e-6}, {"hi", 10.0}, {"n", 15}}}};
        configs.push_back(c);
        c.command = "compare-solvers";
        c.params = Json{{"instances", {{{"rho", 0.2}, {"n", 80}, {"p", 10}}}},
                        {"lambdas", {4.03e-6, 7.91e-2}},
                        {"seeds", 4}};
        configs.push_back(c);
    }

    std::ostringstream detail;
    bool pass = true;
    for (cli::RunConfig& config : configs) {
        config.out = root / ("out_" + config.command);
        if (cli::run_command(config) != 0) return {false, false, "command failed"};
        cli::RunConfig rerun = cli::load_config(config.out / "manifest.json", config.command);
        // identical out directory: artifacts must come back byte-for-byte
        std::map<std::string, std::string> before;
        for (const auto& entry : fs::recursive_directory_iterator(config.out))
            if (entry.is_regular_file()) {
                std::ifstream in(entry.path(), std::ios::binary);
                std::stringstream ss;
                ss << in.rdbuf();
                before[fs::relative(entry.path(), config.out).string()] = ss.str();
            }
        if (cli::run_command(rerun) != 0) return {false, false, "rerun failed"};
        for (const auto& [rel, body] : before) {
            std::ifstream in(config.out / rel, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            if (ss.str() != body) {
                pass = false;
                detail << config.command << ":" << rel << " differs; ";
            }
        }
    }
    if (pass) detail << "all five commands rerun byte-identically from their manifests";
    return {pass, false, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto selected = [&](int n) { return wanted.empty() || wanted.count(n) > 0; };
    const unsigned threads = resolve_threads(0);

    struct Entry {
        int number;
        const char* name;
        std::function<Outcome()> run;
    };

    // The hidden-factor batch feeds criteria 6-9; computed lazily once.
    std::optional<HiddenFactorBatch> batch;
    auto get_batch = [&]() -> const HiddenFactorBatch& {
        if (!batch) batch = hidden_factor_batch(threads);
        return *batch;
    };

    const std::vector<Entry> entries = {
        {1, "prox matches the brute-force QP oracle", criterion1},
        {2, "constant-lambda prox is soft thresholding", criterion2},
        {3, "ADMM recovers the closed-form GMV", criterion3},
        {4, "ADMM and CyCoDe agree on the Table-5 class", [&] { return criterion4(threads); }},
        {5, "long-only ADMM matches the constrained QP oracle", criterion5},
        {6, "oracle grouping recovery over 200 seeds", [&] { return criterion6(get_batch()); }},
        {7, "equal-weight limit at the top penalty scale", [&] { return criterion7(get_batch()); }},
        {8, "actual/empirical GMV risk ratio band", [&] { return criterion8(get_batch()); }},
        {9, "risk-difference bounds hold on full grids", [&] { return criterion9(get_batch(), threads); }},
        {10, "constant-lambda norm degenerates on the simplex", criterion10},
        {11, "diversification metric identities", criterion11},
        {12, "backtest arithmetic and cost monotonicity", criterion12},
        {13, "10-Industry published-table check (optional data)", criterion13},
        {14, "manifest reruns are byte-identical", criterion14},
    };

    int failures = 0;
    for (const Entry& entry : entries) {
        if (!selected(entry.number)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = entry.run();
        } catch (const std::exception& e) {
            outcome = {false, false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const char* tag = outcome.skipped ? "SKIP" : (outcome.pass ? "PASS" : "FAIL");
        std::printf("[%s] criterion %2d: %s (%.1fs) -- %s\n", tag, entry.number, entry.name,
                    secs, outcome.detail.c_str());
        std::fflush(stdout);
        if (!outcome.pass && !outcome.skipped) ++failures;
    }
    if (failures > 0) std::printf("%d criterion(s) failed\n", failures);
    return failures;
}
