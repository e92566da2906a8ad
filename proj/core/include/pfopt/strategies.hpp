#pragma once

#include "pfopt/frontier.hpp"
#include "pfopt/solver.hpp"
#include "pfopt/types.hpp"

#include <string>
#include <vector>

namespace pfopt {

enum class StrategyKind { EW, GMV, GMV_LO, ERC, RIDGE, LASSO, SLOPE, SLOPE_LO, SLOPE_MV };

std::string to_string(StrategyKind kind);
StrategyKind strategy_from_string(const std::string& name);

struct StrategySpec {
    StrategyKind kind = StrategyKind::EW;
    double target_active_frac = 0.30;  // LASSO / SLOPE selection target
    int marker_count = 6;              // RIDGE / SLOPE-LO marker grids
    double q = 0.01;                   // slope sequence decay
};

/// Strategy output: thresholded budget-feasible weights, the active set,
/// and the partition of the active set into equal-|weight| groups.
struct Allocation {
    Vector weights;
    std::vector<int> active_set;
    std::vector<std::vector<int>> groups;
    double lambda_used = 0.0;
    bool selection_flagged = false;
};

Allocation equal_weight(Eigen::Index k);

/// Equal-risk-contribution weights: minimizes the squared deviations of the
/// relative risk contributions from 1/k over the simplex by projected
/// gradient with backtracking, started from equal weights and from the
/// inverse-volatility portfolio (better objective wins).
Allocation erc_solve(const Matrix& sigma, const SolverConfig& config = {});

/// Entries with |w_i| < threshold are zeroed and the survivors rescaled to
/// restore the budget. Throws when everything falls below the threshold or
/// the survivor sum is numerically zero.
Vector threshold_weights(const Vector& w, double threshold);

/// Maximal classes of active weights whose |w_i| differ pairwise by <= tol,
/// ordered by descending group weight; zeros excluded.
std::vector<std::vector<int>> extract_groups(const Vector& w, double tol = 1e-6);

/// Selection rules over a computed frontier. Returned indices are 0-based
/// grid positions; `flagged` reports the degenerate fallbacks.
std::size_t select_lambda_sparse(const FrontierProfile& frontier, double target_active_frac,
                                 bool* flagged = nullptr);
std::size_t select_lambda_ridge(const FrontierProfile& frontier, bool* flagged = nullptr);
std::size_t select_lambda_slope_lo(const FrontierProfile& frontier, bool* flagged = nullptr);

/// From each group picks the asset with minimal sample variance over R and
/// solves the long-only minimum-variance problem restricted to the picks.
Allocation slope_mv(const ReturnsMatrix& R, const std::vector<std::vector<int>>& groups,
                    double threshold = 5e-4, const SolverConfig& config = {});

/// Dispatcher composing the nine strategies. `grid` is the lambda_1 grid
/// used by the penalized strategies; `threshold` is the reporting floor
/// applied to every allocation.
Allocation allocate(const StrategySpec& spec, const Matrix& sigma, const Vector& mu,
                    const ReturnsMatrix& R, const Vector& grid, double threshold = 5e-4,
                    const SolverConfig& config = {});

}  // namespace pfopt
