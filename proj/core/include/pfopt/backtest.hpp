#pragma once

#include "pfopt/estimators.hpp"
#include "pfopt/strategies.hpp"
#include "pfopt/types.hpp"

#include <string>
#include <vector>

namespace pfopt {

struct BacktestConfig {
    Eigen::Index window = 120;           // tau
    Eigen::Index rebalance_period = 1;   // 1 for monthly panels, 21 for daily
    int periods_per_year = 12;           // holding periods per year
    std::vector<StrategySpec> strategies;
    std::vector<double> tc_bps;          // per-unit-turnover costs in basis points
    double threshold = 5e-4;             // weight floor
    Vector grid;                          // lambda_1 grid for penalized strategies
    double q = 0.01;
    bool charge_initial = true;          // establishment cost at the first date
    ShrinkageTarget shrinkage_target = ShrinkageTarget::ScaledIdentity;
    SolverConfig solver;

    void validate() const;
};

struct OosMetrics {
    double mean_ann = 0.0;   // annualized mean return
    double vol_ann = 0.0;    // annualized volatility
    double sharpe_ann = 0.0;
    double var5 = 0.0;       // 5% empirical quantile of per-period returns
};

struct DiversificationMetrics {
    double dr = 0.0;
    double wdiv = 0.0;
    double rdiv = 0.0;
    Vector rc;  // unnormalized risk contributions, sum = sigma_p
};

struct TcRegimeResult {
    double cost_bps = 0.0;
    double mean_ann = 0.0;
    double sharpe_ann = 0.0;
};

struct StrategyReport {
    std::string name;
    OosMetrics oos;
    double mean_active_positions = 0.0;
    double mean_turnover = 0.0;
    double mean_dr = 0.0;
    double mean_wdiv = 0.0;
    double mean_rdiv = 0.0;
    std::vector<double> returns;              // gross OOS holding-period returns
    std::vector<Vector> weights;               // target weights per rebalance date
    std::vector<double> turnovers;             // ||w_t - w_{t-1}||_1, first entry ||w_1||_1
    std::vector<TcRegimeResult> tc;
    std::vector<int> skipped_dates;            // rebalance indices where allocation failed
};

struct BacktestReport {
    std::vector<StrategyReport> strategies;
    std::vector<std::string> rebalance_dates;
    Eigen::Index oos_count = 0;
};

/// Rolling-window protocol: estimate the shrinkage covariance on each
/// trailing window, allocate per strategy, hold for rebalance_period
/// observations (per-asset returns compounded into the holding-period
/// return), roll forward.
BacktestReport run_backtest(const ReturnsMatrix& R, const BacktestConfig& config);

/// Mean / vol / Sharpe annualized with the stated factors; VaR is the 5%
/// type-7 quantile of the per-period series. Throws on zero variance.
OosMetrics oos_metrics(const std::vector<double>& series, int periods_per_year);

/// Mean l1 distance between consecutive target weight vectors.
double turnover(const std::vector<Vector>& weight_history);

DiversificationMetrics diversification_metrics(const Vector& w, const Matrix& sigma);

/// net_t = gross_t - cost_per_unit * turnover_t, aligned per rebalance date.
std::vector<double> apply_transaction_costs(const std::vector<double>& series,
                                            const std::vector<double>& turnovers,
                                            double cost_per_unit);

}  // namespace pfopt
