#pragma once

#include "pfopt/solver.hpp"
#include "pfopt/types.hpp"

#include <optional>
#include <vector>

namespace pfopt {

enum class PenaltyFamily { Slope, Lasso };

/// How one grid scale maps to a penalty sequence: lambda_1 takes the grid
/// value; Slope fills the tail with the normal-quantile sequence at rate q,
/// Lasso keeps the sequence constant at lambda_1.
struct PathSpec {
    PenaltyFamily family = PenaltyFamily::Slope;
    bool nonneg = false;
    double q = 0.01;
};

LambdaSequence penalty_for_scale(Eigen::Index k, double lambda1, const PathSpec& spec);

/// One grid point of a penalty path. Structure counts (active set, groups,
/// shorting) are read off the prox iterate v, which carries exact zeros and
/// ties; risks are quadratic forms of the budget-exact iterate w. Oracle
/// fields are NaN/empty when the sweep had no true model.
struct FrontierPoint {
    double lambda_scale = 0.0;
    Vector weights;          // v of the estimated problem
    Vector weights_budget;   // w of the estimated problem
    Vector weights_oracle;   // v of the oracle problem (empty without oracle)
    double risk_empirical = 0.0;
    double risk_actual = 0.0;
    double risk_oracle = 0.0;
    int active_count = 0;
    int group_count = 0;
    double shorting = 0.0;
    int active_count_oracle = 0;
    int group_count_oracle = 0;
    double shorting_oracle = 0.0;
    bool converged = true;
    bool converged_oracle = true;
};

struct ReferencePoint {
    Vector weights;
    double risk_empirical = 0.0;
    double risk_actual = 0.0;
    bool flagged = false;  // set when the closed form needed a pseudo-inverse
};

struct FrontierProfile {
    std::vector<FrontierPoint> points;  // grid order, lambda_scale increasing
    ReferencePoint gmv;
    ReferencePoint gmv_lo;
    ReferencePoint ew;

    Eigen::Index assets = 0;
    double ew_tol = 1e-3;

    /// First grid index whose solution is long-only (shorting <= 1e-8),
    /// or -1 if the path never reaches a long-only point.
    int first_long_only_index() const;

    /// First grid index within ew_tol (sup norm) of equal weights, or -1.
    int first_ew_index() const;
};

/// Solves the penalized problem along the grid of lambda_1 scales with warm
/// starts, recording weights and structure. When a true model is supplied,
/// the oracle problem is swept alongside and the risk triple is filled.
struct SweepInputs {
    Matrix sigma_hat;
    Vector mu_hat;
    std::optional<Matrix> sigma_true;
    std::optional<Vector> mu_true;
    double phi = 1.0;
};

FrontierProfile sweep_penalty_path(const SweepInputs& inputs, const Vector& grid,
                                   const PathSpec& spec, const SolverConfig& config = {});

}  // namespace pfopt
