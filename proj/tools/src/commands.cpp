#include "pfopt/cli/commands.hpp"

#include "pfopt/cli/errors.hpp"
#include "pfopt/cli/ingest.hpp"

#include <pfopt/backtest.hpp>
#include <pfopt/csv.hpp>
#include <pfopt/estimators.hpp>
#include <pfopt/parallel.hpp>
#include <pfopt/rng.hpp>
#include <pfopt/simulation.hpp>
#include <pfopt/solver.hpp>
#include <pfopt/stats.hpp>
#include <pfopt/strategies.hpp>

#include <chrono>
#include <fstream>

namespace pfopt::cli {

namespace fs = std::filesystem;

namespace {

void write_json(const fs::path& path, const Json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << doc.dump(2) << '\n';
}

Vector parse_grid(const Json& params) {
    if (!params.contains("grid") || !params["grid"].is_object())
        throw ConfigError("missing grid object {lo, hi, n}");
    const Json& g = params["grid"];
    const double lo = require_number(g, "lo");
    const double hi = require_number(g, "hi");
    const auto n = static_cast<Eigen::Index>(require_number(g, "n"));
    if (!(lo > 0.0 && hi > lo && n >= 2)) throw ConfigError("grid needs 0 < lo < hi and n >= 2");
    return log_grid(lo, hi, n);
}

PenaltyFamily parse_family(const std::string& name) {
    if (name == "slope") return PenaltyFamily::Slope;
    if (name == "lasso") return PenaltyFamily::Lasso;
    throw ConfigError("unknown penalty family '" + name + "'");
}

ShrinkageTarget parse_target(const std::string& name) {
    if (name == "identity") return ShrinkageTarget::ScaledIdentity;
    if (name == "constant-correlation") return ShrinkageTarget::ConstantCorrelation;
    throw ConfigError("unknown shrinkage target '" + name + "'");
}

IngestOptions parse_ingest(const Json& params) {
    IngestOptions opt;
    opt.date_format = get_string(params, "date_format", "auto");
    opt.drop_threshold = get_number(params, "drop_threshold", 0.0);
    opt.percent_units = get_bool(params, "percent_units", false);
    return opt;
}

SolverConfig parse_solver(const Json& params) {
    SolverConfig cfg;
    cfg.eta = get_number(params, "eta", 1.0);
    cfg.tol = get_number(params, "tol", 1e-7);
    cfg.max_iter = static_cast<int>(get_number(params, "max_iter", 50000));
    if (!(cfg.eta > 0.0 && cfg.tol > 0.0 && cfg.max_iter >= 1))
        throw ConfigError("solver settings need eta > 0, tol > 0, max_iter >= 1");
    return cfg;
}

void write_frontier_csv(const fs::path& path, const FrontierProfile& f) {
    csv::Writer w({"kind", "grid_index", "lambda_scale", "risk_empirical", "risk_actual",
                   "risk_oracle", "active", "groups", "shorting", "active_oracle",
                   "groups_oracle", "shorting_oracle", "converged", "converged_oracle"});
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const FrontierPoint& pt = f.points[i];
        w.cell(std::string("grid"))
            .cell(static_cast<long long>(i + 1))
            .cell(pt.lambda_scale)
            .cell(pt.risk_empirical)
            .cell(pt.risk_actual)
            .cell(pt.risk_oracle)
            .cell(pt.active_count)
            .cell(pt.group_count)
            .cell(pt.shorting)
            .cell(pt.active_count_oracle)
            .cell(pt.group_count_oracle)
            .cell(pt.shorting_oracle)
            .cell(static_cast<long long>(pt.converged))
            .cell(static_cast<long long>(pt.converged_oracle))
            .end_row();
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto ref_row = [&](const char* kind, const ReferencePoint& ref) {
        w.cell(std::string(kind))
            .cell(static_cast<long long>(-1))
            .cell(nan)
            .cell(ref.risk_empirical)
            .cell(ref.risk_actual)
            .cell(nan)
            .cell(static_cast<long long>((ref.weights.array() != 0.0).count()))
            .cell(static_cast<long long>(extract_groups(ref.weights, 1e-6).size()))
            .cell(shorting_amount(ref.weights))
            .cell(static_cast<long long>(-1))
            .cell(static_cast<long long>(-1))
            .cell(nan)
            .cell(static_cast<long long>(!ref.flagged))
            .cell(static_cast<long long>(1))
            .end_row();
    };
    ref_row("gmv", f.gmv);
    ref_row("gmv_lo", f.gmv_lo);
    ref_row("ew", f.ew);
    w.write(path);
}

void write_path_weights_csv(const fs::path& path, const FrontierProfile& f,
                            const std::vector<std::string>& tickers) {
    csv::Writer w({"grid_index", "asset", "ticker", "weight", "weight_oracle"});
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < f.points.size(); ++i) {
        const FrontierPoint& pt = f.points[i];
        for (Eigen::Index j = 0; j < pt.weights.size(); ++j) {
            const bool has_oracle = pt.weights_oracle.size() == pt.weights.size();
            w.cell(static_cast<long long>(i + 1))
                .cell(static_cast<long long>(j))
                .cell(tickers.empty() ? std::to_string(j) : tickers[static_cast<std::size_t>(j)])
                .cell(pt.weights[j])
                .cell(has_oracle ? pt.weights_oracle[j] : nan)
                .end_row();
        }
    }
    w.write(path);
}

ReturnsMatrix load_panel(const Json& params) {
    const std::string path = get_string(params, "returns_csv", "");
    if (path.empty()) throw ConfigError("missing returns_csv");
    return ingest_returns(path, parse_ingest(params));
}

CovarianceEstimate estimate_cov(const ReturnsMatrix& R, const Json& params) {
    const std::string estimator = get_string(params, "estimator", "shrinkage");
    if (estimator == "sample") return sample_cov(R);
    if (estimator == "shrinkage") return ledoit_wolf_shrinkage(R, ShrinkageTarget::ScaledIdentity);
    if (estimator == "shrinkage-cc")
        return ledoit_wolf_shrinkage(R, ShrinkageTarget::ConstantCorrelation);
    throw ConfigError("unknown estimator '" + estimator + "'");
}

std::vector<std::uint64_t> parse_seeds(const RunConfig& config) {
    const Json& params = config.params;
    if (!params.contains("seeds")) return {config.seed};
    const Json& seeds = params["seeds"];
    std::vector<std::uint64_t> out;
    if (seeds.is_array()) {
        for (const auto& s : seeds) out.push_back(s.get<std::uint64_t>());
    } else if (seeds.is_object()) {
        const auto count = static_cast<std::uint64_t>(require_number(seeds, "count"));
        const auto start = static_cast<std::uint64_t>(get_number(seeds, "start", 1.0));
        for (std::uint64_t i = 0; i < count; ++i) out.push_back(start + i);
    } else {
        throw ConfigError("seeds must be an array or {count, start}");
    }
    if (out.empty()) throw ConfigError("empty seed list");
    return out;
}

// ---------------------------------------------------------------- solve --

void cmd_solve(const RunConfig& config, const fs::path& stage) {
    const Json& params = config.params;
    Matrix sigma;
    std::vector<std::string> tickers;
    Vector mu;

    if (params.contains("covariance_csv")) {
        const csv::Table table = csv::read_file(get_string(params, "covariance_csv", ""));
        const auto k = static_cast<Eigen::Index>(table.header.size());
        if (static_cast<Eigen::Index>(table.rows.size()) != k)
            throw DataError("covariance_csv must be square with a ticker header");
        sigma.resize(k, k);
        tickers = table.header;
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) {
                try {
                    sigma(i, j) = std::stod(table.rows[static_cast<std::size_t>(i)]
                                                      [static_cast<std::size_t>(j)]);
                } catch (const std::exception&) {
                    throw DataError("covariance_csv: unparseable cell");
                }
            }
        mu = Vector::Zero(k);
        if (params.contains("mu_csv")) {
            const csv::Table mt = csv::read_file(get_string(params, "mu_csv", ""));
            if (static_cast<Eigen::Index>(mt.rows.size()) != k)
                throw DataError("mu_csv row count does not match the covariance");
            for (Eigen::Index i = 0; i < k; ++i)
                mu[i] = std::stod(mt.rows[static_cast<std::size_t>(i)][0]);
        }
    } else {
        const ReturnsMatrix R = load_panel(params);
        sigma = estimate_cov(R, params).matrix;
        tickers = R.tickers;
        mu = get_bool(params, "use_mean", false) ? sample_mean(R)
                                                 : Vector::Zero(R.assets());
    }

    const Eigen::Index k = sigma.rows();
    LambdaSequence penalty = LambdaSequence::zero(k);
    if (params.contains("penalty")) {
        const Json& pen = params["penalty"];
        if (pen.contains("values")) {
            Vector values(k);
            if (static_cast<Eigen::Index>(pen["values"].size()) != k)
                throw ConfigError("penalty values length must equal the asset count");
            for (Eigen::Index i = 0; i < k; ++i) values[i] = pen["values"][static_cast<std::size_t>(i)].get<double>();
            penalty = LambdaSequence(values);
        } else {
            const std::string family = get_string(pen, "family", "slope");
            const double lambda1 = get_number(pen, "lambda1", 0.0);
            if (family == "none" || lambda1 == 0.0) {
                penalty = LambdaSequence::zero(k);
            } else {
                PathSpec path{parse_family(family), false, get_number(pen, "q", 0.01)};
                penalty = penalty_for_scale(k, lambda1, path);
            }
        }
    }

    SolverProblem problem{sigma, mu, get_number(params, "phi", 1.0), penalty,
                          get_bool(params, "nonneg", false)};
    const SolverConfig solver_cfg = parse_solver(params);
    SolverSolution sol;
    try {
        sol = admm_solve(problem, solver_cfg);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }
    if (!sol.converged) throw SolverEscalation("solver did not converge within the iteration cap");

    csv::Writer w({"asset", "ticker", "weight", "weight_budget"});
    for (Eigen::Index i = 0; i < k; ++i)
        w.cell(static_cast<long long>(i))
            .cell(tickers.empty() ? std::to_string(i) : tickers[static_cast<std::size_t>(i)])
            .cell(sol.v[i])
            .cell(sol.w[i])
            .end_row();
    w.write(stage / "weights.csv");

    Json report;
    report["converged"] = sol.converged;
    report["iterations"] = sol.iterations;
    report["gap"] = sol.gap;
    report["objective"] = sol.objective;
    report["budget_residual"] = std::abs(sol.w.sum() - 1.0);
    report["shorting"] = shorting_amount(sol.v);
    report["active"] = static_cast<int>((sol.v.array() != 0.0).count());
    report["groups"] = extract_groups(sol.v, 1e-6).size();
    write_json(stage / "report.json", report);
}

// -------------------------------------------------------------- frontier --

void cmd_frontier(const RunConfig& config, const fs::path& stage) {
    const Json& params = config.params;
    const ReturnsMatrix R = load_panel(params);
    const CovarianceEstimate sigma = estimate_cov(R, params);
    const Vector mu = get_bool(params, "use_mean", false) ? sample_mean(R)
                                                          : Vector::Zero(R.assets());
    PathSpec path{parse_family(get_string(params, "family", "slope")),
                  get_bool(params, "nonneg", false), get_number(params, "q", 0.01)};
    const Vector grid = parse_grid(params);
    const FrontierProfile f =
        sweep_penalty_path({sigma.matrix, mu, {}, {}, get_number(params, "phi", 1.0)}, grid,
                           path, parse_solver(params));

    write_frontier_csv(stage / "frontier.csv", f);
    write_path_weights_csv(stage / "weights.csv", f, R.tickers);

    bool flag_sparse = false, flag_ridge = false, flag_lo = false;
    Json report;
    report["points"] = f.points.size();
    report["first_long_only_index"] = f.first_long_only_index();
    report["first_ew_index"] = f.first_ew_index();
    report["selection"] = {
        {"sparse_30pct",
         select_lambda_sparse(f, get_number(params, "target_active_frac", 0.30), &flag_sparse)},
        {"sparse_30pct_flagged", flag_sparse},
        {"ridge", select_lambda_ridge(f, &flag_ridge)},
        {"ridge_flagged", flag_ridge},
        {"slope_lo", select_lambda_slope_lo(f, &flag_lo)},
        {"slope_lo_flagged", flag_lo},
    };
    write_json(stage / "report.json", report);
}

// -------------------------------------------------------------- simulate --

void cmd_simulate(const RunConfig& config, const fs::path& stage) {
    const Json& params = config.params;
    const std::string design = get_string(params, "design", "hidden-factor");
    const std::string mode = get_string(params, "mode", "minvar");
    if (mode != "minvar" && mode != "meanvar")
        throw ConfigError("mode must be minvar or meanvar");
    FrontierSpec spec;
    spec.family = parse_family(get_string(params, "family", "slope"));
    spec.nonneg = get_bool(params, "nonneg", false);
    spec.use_estimated_mean = (mode == "meanvar");
    spec.q = get_number(params, "q", 0.01);
    const Vector grid = parse_grid(params);
    const SolverConfig solver_cfg = parse_solver(params);
    const bool check_bounds = get_bool(params, "risk_bounds", true);
    const std::vector<std::uint64_t> seeds = parse_seeds(config);

    auto make_market = [&](std::uint64_t seed) -> SimulatedMarket {
        if (design == "hidden-factor") return hidden_factor_market(seed);
        if (design == "calibrated") return calibrated_market(seed);
        if (design == "constant-correlation")
            return constant_corr_market(seed, require_number(params, "rho"),
                                        static_cast<Eigen::Index>(require_number(params, "n")),
                                        static_cast<Eigen::Index>(require_number(params, "p")));
        throw ConfigError("unknown design '" + design + "'");
    };

    struct SeedResult {
        FrontierProfile frontier;
        std::vector<RiskBoundReport> bounds;
        double gmv_ratio = 0.0;
        double ew_gap = 0.0;
    };
    std::vector<SeedResult> results(seeds.size());

    parallel_for(
        seeds.size(),
        [&](std::size_t i) {
            const SimulatedMarket market = make_market(seeds[i]);
            SeedResult& r = results[i];
            r.frontier = frontier_sweep(market, grid, spec, solver_cfg);
            const Eigen::Index k = market.returns.assets();
            r.gmv_ratio = r.frontier.gmv.risk_actual / r.frontier.gmv.risk_empirical;
            r.ew_gap = (r.frontier.points.back().weights.array() -
                        1.0 / static_cast<double>(k))
                           .abs()
                           .maxCoeff();
            if (check_bounds) {
                const Matrix sigma_hat = sample_cov(market.returns).matrix;
                for (const FrontierPoint& pt : r.frontier.points) {
                    const LambdaSequence lambda = penalty_for_scale(
                        k, pt.lambda_scale, {spec.family, spec.nonneg, spec.q});
                    r.bounds.push_back(verify_risk_bounds(pt.weights_budget, pt.weights_oracle,
                                                          market.sigma_true.matrix, sigma_hat,
                                                          lambda));
                }
            }
        },
        config.threads);

    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const std::string name =
            seeds.size() == 1 ? "frontier.csv" : "frontier_s" + std::to_string(seeds[i]) + ".csv";
        write_frontier_csv(stage / name, results[i].frontier);
    }

    if (check_bounds) {
        csv::Writer w({"seed", "grid_index", "lambda_scale", "applicable", "c", "sigma_err",
                       "lhs1", "rhs1", "lhs2", "rhs2", "lhs3", "rhs3", "pass"});
        for (std::size_t i = 0; i < seeds.size(); ++i) {
            for (std::size_t g = 0; g < results[i].bounds.size(); ++g) {
                const RiskBoundReport& b = results[i].bounds[g];
                w.cell(static_cast<long long>(seeds[i]))
                    .cell(static_cast<long long>(g + 1))
                    .cell(results[i].frontier.points[g].lambda_scale)
                    .cell(static_cast<long long>(b.applicable))
                    .cell(b.c)
                    .cell(b.sigma_err)
                    .cell(b.lhs[0])
                    .cell(b.rhs[0])
                    .cell(b.lhs[1])
                    .cell(b.rhs[1])
                    .cell(b.lhs[2])
                    .cell(b.rhs[2])
                    .cell(static_cast<long long>(b.all_pass()))
                    .end_row();
            }
        }
        w.write(stage / "riskbounds.csv");
    }

    std::vector<double> ratios, ew_gaps;
    bool all_bounds = true;
    for (const SeedResult& r : results) {
        ratios.push_back(r.gmv_ratio);
        ew_gaps.push_back(r.ew_gap);
        for (const RiskBoundReport& b : r.bounds)
            if (b.applicable && !b.all_pass()) all_bounds = false;
    }
    Json report;
    report["design"] = design;
    report["mode"] = mode;
    report["seeds"] = seeds;
    report["gmv_ratio_median"] = median_of(ratios);
    report["ew_limit_gap_max"] = *std::max_element(ew_gaps.begin(), ew_gaps.end());
    report["risk_bounds_all_pass"] = all_bounds;
    write_json(stage / "report.json", report);
}

// -------------------------------------------------------------- backtest --

void cmd_backtest(const RunConfig& config, const fs::path& stage) {
    const Json& params = config.params;
    const ReturnsMatrix R = load_panel(params);

    BacktestConfig bt;
    bt.window = static_cast<Eigen::Index>(get_number(params, "window", 120.0));
    bt.rebalance_period =
        static_cast<Eigen::Index>(get_number(params, "rebalance_period", 1.0));
    bt.periods_per_year = static_cast<int>(get_number(params, "periods_per_year", 12.0));
    bt.threshold = get_number(params, "threshold", 5e-4);
    bt.q = get_number(params, "q", 0.01);
    bt.charge_initial = get_bool(params, "charge_initial", true);
    bt.shrinkage_target = parse_target(get_string(params, "shrinkage_target", "identity"));
    bt.solver = parse_solver(params);
    bt.grid = parse_grid(params);
    if (params.contains("tc_bps"))
        for (const auto& c : params["tc_bps"]) bt.tc_bps.push_back(c.get<double>());
    else
        bt.tc_bps = {0.0, 35.0, 50.0};
    if (!params.contains("strategies") || !params["strategies"].is_array())
        throw ConfigError("backtest needs a strategies array");
    for (const auto& name : params["strategies"]) {
        StrategySpec spec;
        try {
            spec.kind = strategy_from_string(name.get<std::string>());
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        spec.q = bt.q;
        spec.target_active_frac = get_number(params, "target_active_frac", 0.30);
        bt.strategies.push_back(spec);
    }

    BacktestReport rep;
    try {
        rep = run_backtest(R, bt);
    } catch (const std::invalid_argument& e) {
        throw DataError(e.what());
    }

    fs::create_directories(stage / "tables");
    {
        csv::Writer w({"strategy", "vol_ann_pct", "sharpe_ann", "mean_active", "turnover",
                       "var5_pct"});
        for (const StrategyReport& sr : rep.strategies)
            w.cell(sr.name)
                .cell(100.0 * sr.oos.vol_ann)
                .cell(sr.oos.sharpe_ann)
                .cell(sr.mean_active_positions)
                .cell(sr.mean_turnover)
                .cell(100.0 * sr.oos.var5)
                .end_row();
        w.write(stage / "tables" / "risk_return.csv");
    }
    {
        csv::Writer w({"strategy", "dr", "wdiv", "rdiv"});
        for (const StrategyReport& sr : rep.strategies)
            w.cell(sr.name).cell(sr.mean_dr).cell(sr.mean_wdiv).cell(sr.mean_rdiv).end_row();
        w.write(stage / "tables" / "diversification.csv");
    }
    {
        csv::Writer w({"strategy", "cost_bps", "net_mean_ann", "net_sharpe_ann"});
        for (const StrategyReport& sr : rep.strategies)
            for (const TcRegimeResult& tc : sr.tc)
                w.cell(sr.name).cell(tc.cost_bps).cell(tc.mean_ann).cell(tc.sharpe_ann).end_row();
        w.write(stage / "tables" / "tc_regimes.csv");
    }
    {
        csv::Writer w({"date", "strategy", "gross_return", "turnover"});
        for (const StrategyReport& sr : rep.strategies) {
            std::size_t pos = 0;
            for (std::size_t d = 0; d < rep.rebalance_dates.size(); ++d) {
                const bool skipped =
                    std::find(sr.skipped_dates.begin(), sr.skipped_dates.end(),
                              static_cast<int>(d)) != sr.skipped_dates.end();
                if (skipped) continue;
                w.cell(rep.rebalance_dates[d])
                    .cell(sr.name)
                    .cell(sr.returns[pos])
                    .cell(sr.turnovers[pos])
                    .end_row();
                ++pos;
            }
        }
        w.write(stage / "returns_oos.csv");
    }
    {
        csv::Writer w({"date", "strategy", "asset", "ticker", "weight"});
        for (const StrategyReport& sr : rep.strategies) {
            std::size_t pos = 0;
            for (std::size_t d = 0; d < rep.rebalance_dates.size(); ++d) {
                const bool skipped =
                    std::find(sr.skipped_dates.begin(), sr.skipped_dates.end(),
                              static_cast<int>(d)) != sr.skipped_dates.end();
                if (skipped) continue;
                const Vector& wts = sr.weights[pos];
                for (Eigen::Index j = 0; j < wts.size(); ++j)
                    w.cell(rep.rebalance_dates[d])
                        .cell(sr.name)
                        .cell(static_cast<long long>(j))
                        .cell(R.tickers[static_cast<std::size_t>(j)])
                        .cell(wts[j])
                        .end_row();
                ++pos;
            }
        }
        w.write(stage / "weights.csv");
    }

    Json report;
    report["oos_count"] = rep.oos_count;
    report["window"] = bt.window;
    report["rebalance_period"] = bt.rebalance_period;
    report["periods_per_year"] = bt.periods_per_year;
    Json strategies = Json::array();
    for (const StrategyReport& sr : rep.strategies) {
        Json s;
        s["name"] = sr.name;
        s["vol_ann"] = sr.oos.vol_ann;
        s["mean_ann"] = sr.oos.mean_ann;
        s["sharpe_ann"] = sr.oos.sharpe_ann;
        s["var5"] = sr.oos.var5;
        s["mean_active"] = sr.mean_active_positions;
        s["turnover"] = sr.mean_turnover;
        s["dr"] = sr.mean_dr;
        s["wdiv"] = sr.mean_wdiv;
        s["rdiv"] = sr.mean_rdiv;
        s["skipped_dates"] = sr.skipped_dates;
        Json tc = Json::array();
        for (const TcRegimeResult& t : sr.tc)
            tc.push_back({{"cost_bps", t.cost_bps},
                          {"net_mean_ann", t.mean_ann},
                          {"net_sharpe_ann", t.sharpe_ann}});
        s["tc"] = tc;
        strategies.push_back(s);
    }
    report["strategies"] = strategies;
    write_json(stage / "report.json", report);
}

// ------------------------------------------------------- compare-solvers --

void cmd_compare_solvers(const RunConfig& config, const fs::path& stage) {
    const Json& params = config.params;
    if (!params.contains("instances") || !params["instances"].is_array())
        throw ConfigError("compare-solvers needs an instances array of {rho, n, p}");
    std::vector<double> lambdas;
    if (params.contains("lambdas"))
        for (const auto& l : params["lambdas"]) lambdas.push_back(l.get<double>());
    else
        lambdas = {4.03e-6, 5.65e-4, 7.91e-2};
    const auto n_seeds = static_cast<std::uint64_t>(get_number(params, "seeds", 100.0));
    const auto seed_start = static_cast<std::uint64_t>(get_number(params, "seed_start", 1.0));
    const SolverConfig solver_cfg = parse_solver(params);
    const bool timings = get_bool(params, "timings", false);
    const std::string start = get_string(params, "start", "ew");
    if (start != "ew" && start != "random") throw ConfigError("start must be ew or random");

    csv::Writer table({"rho", "n", "p", "lambda", "algo", "min_obj", "med_obj", "med_short",
                       "med_time_s", "med_wdiff"});
    Json report;
    report["cases"] = Json::array();

    for (const auto& inst : params["instances"]) {
        const double rho = require_number(inst, "rho");
        const auto n = static_cast<Eigen::Index>(require_number(inst, "n"));
        const auto p = static_cast<Eigen::Index>(require_number(inst, "p"));

        struct SeedRow {
            std::vector<double> admm_obj, cyco_obj, admm_short, cyco_short;
            std::vector<double> admm_time, cyco_time, wdiff;
        };
        std::vector<SeedRow> rows(lambdas.size());
        for (auto& r : rows) {
            r.admm_obj.resize(n_seeds);
            r.cyco_obj.resize(n_seeds);
            r.admm_short.resize(n_seeds);
            r.cyco_short.resize(n_seeds);
            r.admm_time.resize(n_seeds);
            r.cyco_time.resize(n_seeds);
            r.wdiff.resize(n_seeds);
        }

        parallel_for(
            n_seeds,
            [&](std::size_t i) {
                const std::uint64_t seed = seed_start + i;
                const SimulatedMarket mkt = constant_corr_market(seed, rho, n, p);
                const Matrix sigma = ledoit_wolf_shrinkage(mkt.returns).matrix;
                const AdmmSolver solver(sigma, 2.0, solver_cfg.eta);

                Vector w0 = Vector::Constant(p, 1.0 / static_cast<double>(p));
                if (start == "random") {
                    Rng rng(seed, 4);
                    for (Eigen::Index j = 0; j < p; ++j) w0[j] = rng.next_uniform();
                    w0 /= w0.sum();
                }
                const WarmStart ws{w0, w0, Vector::Zero(p), 0.0};

                for (std::size_t li = 0; li < lambdas.size(); ++li) {
                    const LambdaSequence lambda = LambdaSequence::constant(p, lambdas[li]);
                    SolverConfig run_cfg = solver_cfg;
                    run_cfg.warm_start = ws;

                    const auto t0 = std::chrono::steady_clock::now();
                    const SolverSolution admm =
                        solver.solve(Vector::Zero(p), lambda, false, run_cfg);
                    const auto t1 = std::chrono::steady_clock::now();
                    const SolverProblem problem{sigma, Vector::Zero(p), 2.0, lambda, false};
                    const SolverSolution cyco = cycode_solve(problem, run_cfg);
                    const auto t2 = std::chrono::steady_clock::now();

                    SeedRow& r = rows[li];
                    r.admm_obj[i] = admm.objective;
                    r.cyco_obj[i] = cyco.objective;
                    r.admm_short[i] = shorting_amount(admm.v);
                    r.cyco_short[i] = shorting_amount(cyco.w);
                    r.admm_time[i] =
                        timings ? std::chrono::duration<double>(t1 - t0).count() : 0.0;
                    r.cyco_time[i] =
                        timings ? std::chrono::duration<double>(t2 - t1).count() : 0.0;
                    r.wdiff[i] = (admm.w - cyco.w).cwiseAbs().sum();
                }
            },
            config.threads);

        for (std::size_t li = 0; li < lambdas.size(); ++li) {
            SeedRow& r = rows[li];
            const double med_wdiff = median_of(r.wdiff);
            auto emit = [&](const char* algo, std::vector<double>& obj,
                            std::vector<double>& shorts, std::vector<double>& times) {
                table.cell(rho)
                    .cell(static_cast<long long>(n))
                    .cell(static_cast<long long>(p))
                    .cell(lambdas[li])
                    .cell(std::string(algo))
                    .cell(*std::min_element(obj.begin(), obj.end()))
                    .cell(median_of(obj))
                    .cell(median_of(shorts))
                    .cell(median_of(times))
                    .cell(med_wdiff)
                    .end_row();
            };
            emit("cycode", r.cyco_obj, r.cyco_short, r.cyco_time);
            emit("admm", r.admm_obj, r.admm_short, r.admm_time);

            double max_gap = 0.0;
            for (std::size_t i = 0; i < n_seeds; ++i)
                max_gap = std::max(max_gap, std::abs(r.admm_obj[i] - r.cyco_obj[i]));
            Json c;
            c["rho"] = rho;
            c["n"] = n;
            c["p"] = p;
            c["lambda"] = lambdas[li];
            c["med_obj_admm"] = median_of(r.admm_obj);
            c["med_obj_cycode"] = median_of(r.cyco_obj);
            c["med_short_admm"] = median_of(r.admm_short);
            c["max_objective_gap"] = max_gap;
            c["med_wdiff"] = med_wdiff;
            report["cases"].push_back(c);
        }
    }

    fs::create_directories(stage / "tables");
    table.write(stage / "tables" / "compare_solvers.csv");
    write_json(stage / "report.json", report);
}

}  // namespace

int run_command(const RunConfig& config) {
    const fs::path out = config.out;
    const fs::path stage = out.string() + ".staging";
    std::error_code ec;
    fs::remove_all(stage, ec);
    fs::create_directories(stage);

    try {
        if (config.command == "solve")
            cmd_solve(config, stage);
        else if (config.command == "frontier")
            cmd_frontier(config, stage);
        else if (config.command == "simulate")
            cmd_simulate(config, stage);
        else if (config.command == "backtest")
            cmd_backtest(config, stage);
        else if (config.command == "compare-solvers")
            cmd_compare_solvers(config, stage);
        else
            throw ConfigError("unknown command '" + config.command + "'");
        write_json(stage / "manifest.json", make_manifest(config));
    } catch (...) {
        fs::remove_all(stage, ec);
        throw;
    }

    fs::remove_all(out, ec);
    fs::rename(stage, out);
    return 0;
}

}  // namespace pfopt::cli
