#include "pfopt/backtest.hpp"

#include "pfopt/stats.hpp"

#include <cmath>

namespace pfopt {

void BacktestConfig::validate() const {
    require(window >= 2, "BacktestConfig: window >= 2");
    require(rebalance_period >= 1, "BacktestConfig: rebalance_period >= 1");
    require(periods_per_year >= 1, "BacktestConfig: periods_per_year >= 1");
    require(!strategies.empty(), "BacktestConfig: no strategies");
    for (double c : tc_bps) require(c >= 0.0, "BacktestConfig: negative cost");
    require(threshold >= 0.0, "BacktestConfig: negative threshold");
}

OosMetrics oos_metrics(const std::vector<double>& series, int periods_per_year) {
    require(series.size() >= 2, "oos_metrics: need at least 2 observations");
    const double n = static_cast<double>(series.size());
    const double mean = mean_of(series);
    double ss = 0.0;
    for (double r : series) ss += (r - mean) * (r - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    require(sd > 0.0, "oos_metrics: zero variance series");

    const double ppy = static_cast<double>(periods_per_year);
    OosMetrics m;
    m.mean_ann = ppy * mean;
    m.vol_ann = std::sqrt(ppy) * sd;
    m.sharpe_ann = std::sqrt(ppy) * mean / sd;
    m.var5 = quantile_type7(series, 0.05);
    return m;
}

double turnover(const std::vector<Vector>& weight_history) {
    require(weight_history.size() >= 2, "turnover: need at least 2 dates");
    double total = 0.0;
    for (std::size_t t = 1; t < weight_history.size(); ++t)
        total += (weight_history[t] - weight_history[t - 1]).cwiseAbs().sum();
    return total / static_cast<double>(weight_history.size() - 1);
}

DiversificationMetrics diversification_metrics(const Vector& w, const Matrix& sigma) {
    require(w.size() == sigma.rows(), "diversification_metrics: dimension mismatch");
    const Vector sw = sigma * w;
    const double var = w.dot(sw);
    require(var > 0.0, "diversification_metrics: zero portfolio variance");
    const double sigma_p = std::sqrt(var);
    const double k = static_cast<double>(w.size());

    DiversificationMetrics m;
    m.dr = w.dot(sigma.diagonal().cwiseSqrt()) / sigma_p;
    m.wdiv = 1.0 / (k * w.squaredNorm());
    m.rc = w.cwiseProduct(sw) / sigma_p;          // sums to sigma_p
    const Vector rel = m.rc / sigma_p;            // sums to 1
    m.rdiv = 1.0 / (k * rel.squaredNorm());
    return m;
}

std::vector<double> apply_transaction_costs(const std::vector<double>& series,
                                            const std::vector<double>& turnovers,
                                            double cost_per_unit) {
    require(series.size() == turnovers.size(), "apply_transaction_costs: misaligned lengths");
    require(cost_per_unit >= 0.0, "apply_transaction_costs: negative cost");
    std::vector<double> net(series.size());
    for (std::size_t t = 0; t < series.size(); ++t)
        net[t] = series[t] - cost_per_unit * turnovers[t];
    return net;
}

namespace {

/// Per-asset holding-period return over [first, first+len): compounded.
Vector holding_return(const ReturnsMatrix& R, Eigen::Index first, Eigen::Index len) {
    Vector out = Vector::Ones(R.assets());
    for (Eigen::Index t = first; t < first + len; ++t)
        out = out.cwiseProduct(Vector::Ones(R.assets()) + R.values.row(t).transpose());
    return out - Vector::Ones(R.assets());
}

}  // namespace

BacktestReport run_backtest(const ReturnsMatrix& R, const BacktestConfig& config) {
    config.validate();
    const Eigen::Index T = R.periods();
    const Eigen::Index tau = config.window;
    const Eigen::Index period = config.rebalance_period;
    require(T > tau + period, "run_backtest: panel shorter than window plus one holding period");

    const Eigen::Index n_dates = (T - tau) / period;
    const Eigen::Index k = R.assets();

    BacktestReport report;
    report.oos_count = n_dates;
    for (Eigen::Index d = 0; d < n_dates; ++d)
        report.rebalance_dates.push_back(R.dates[static_cast<std::size_t>(d * period + tau - 1)]);

    // SLOPE-MV fixes its asset groups once, from the full-sample covariance.
    std::vector<std::vector<int>> slope_mv_groups;
    for (const StrategySpec& spec : config.strategies) {
        if (spec.kind != StrategyKind::SLOPE_MV || !slope_mv_groups.empty()) continue;
        const CovarianceEstimate full = ledoit_wolf_shrinkage(R, config.shrinkage_target);
        PathSpec path{PenaltyFamily::Slope, true, spec.q};
        const FrontierProfile profile = sweep_penalty_path(
            {full.matrix, Vector::Zero(k), {}, {}, 1.0}, config.grid, path, config.solver);
        const std::size_t idx = select_lambda_slope_lo(profile);
        slope_mv_groups = extract_groups(profile.points[idx].weights, 1e-6);
    }

    for (const StrategySpec& spec : config.strategies) {
        StrategyReport sr;
        sr.name = to_string(spec.kind);

        std::vector<double> dr_vals, wdiv_vals, rdiv_vals, ap_vals;
        for (Eigen::Index d = 0; d < n_dates; ++d) {
            const Eigen::Index start = d * period;
            const ReturnsMatrix win = R.window(start, tau);
            try {
                const CovarianceEstimate sigma_hat =
                    ledoit_wolf_shrinkage(win, config.shrinkage_target);
                Allocation alloc;
                if (spec.kind == StrategyKind::SLOPE_MV) {
                    alloc = slope_mv(win, slope_mv_groups, config.threshold, config.solver);
                } else {
                    alloc = allocate(spec, sigma_hat.matrix, Vector::Zero(k), win, config.grid,
                                     config.threshold, config.solver);
                }
                const Vector gross = holding_return(R, start + tau, period);
                sr.returns.push_back(alloc.weights.dot(gross));
                sr.weights.push_back(alloc.weights);
                ap_vals.push_back(static_cast<double>(alloc.active_set.size()));
                const DiversificationMetrics div =
                    diversification_metrics(alloc.weights, sigma_hat.matrix);
                dr_vals.push_back(div.dr);
                wdiv_vals.push_back(div.wdiv);
                rdiv_vals.push_back(div.rdiv);
            } catch (const std::exception&) {
                sr.skipped_dates.push_back(static_cast<int>(d));
            }
        }
        require(sr.returns.size() >= 2, "run_backtest: fewer than 2 realized dates for " + sr.name);

        sr.oos = oos_metrics(sr.returns, config.periods_per_year);
        sr.mean_turnover = (sr.weights.size() >= 2) ? turnover(sr.weights) : 0.0;
        sr.mean_active_positions = mean_of(ap_vals);
        sr.mean_dr = mean_of(dr_vals);
        sr.mean_wdiv = mean_of(wdiv_vals);
        sr.mean_rdiv = mean_of(rdiv_vals);

        sr.turnovers.resize(sr.weights.size(), 0.0);
        sr.turnovers[0] = config.charge_initial ? sr.weights[0].cwiseAbs().sum() : 0.0;
        for (std::size_t t = 1; t < sr.weights.size(); ++t)
            sr.turnovers[t] = (sr.weights[t] - sr.weights[t - 1]).cwiseAbs().sum();

        for (const double bps : config.tc_bps) {
            const std::vector<double> net =
                apply_transaction_costs(sr.returns, sr.turnovers, bps * 1e-4);
            const OosMetrics nm = oos_metrics(net, config.periods_per_year);
            sr.tc.push_back({bps, nm.mean_ann, nm.sharpe_ann});
        }
        report.strategies.push_back(std::move(sr));
    }
    return report;
}

}  // namespace pfopt
