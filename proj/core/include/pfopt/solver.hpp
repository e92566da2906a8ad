#pragma once

#include "pfopt/sorted_l1.hpp"
#include "pfopt/types.hpp"

#include <memory>
#include <optional>

namespace pfopt {

/// Penalized mean-variance instance
///   min (phi/2) w'Sigma w - mu'w + rho_lambda(w)   s.t.  e'w = 1
/// with an optional long-only constraint. A constant penalty sequence is
/// the lasso; a zero sequence removes the penalty.
struct SolverProblem {
    Matrix sigma;
    Vector mu;
    double phi = 1.0;
    LambdaSequence penalty;
    bool nonneg = false;

    void validate() const;
    Eigen::Index size() const { return sigma.rows(); }
};

struct WarmStart {
    Vector w;
    Vector v;
    Vector alpha;
    double beta = 0.0;
};

struct SolverConfig {
    double eta = 1.0;        // augmented-Lagrangian parameter
    double tol = 1e-7;       // primal-dual-gap tolerance
    int max_iter = 50000;
    std::optional<WarmStart> warm_start;
};

struct SolverSolution {
    Vector w;       // budget-feasible iterate
    Vector v;       // split variable from the prox; carries exact zeros/ties
    Vector alpha;   // vector dual
    double beta = 0.0;
    double gap = 0.0;
    double objective = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Primal objective (phi/2) w'Sigma w - mu'w + rho_lambda(w).
double objective(const Vector& w, const SolverProblem& problem);

/// Gross short magnitude: sum of |w_i| over negative entries.
double shorting_amount(const Vector& w);

/// ADMM engine for one (Sigma, phi, eta). The w-update operator
/// (phi Sigma + eta (I + ee')) is factored once at construction and shared
/// across iterations, lambda-grid neighbors, and threads (read-only).
class AdmmSolver {
  public:
    AdmmSolver(Matrix sigma, double phi, double eta);

    /// Runs the four updates of the splitting scheme until the dual-gap
    /// certificate and feasibility residuals pass, or max_iter.
    SolverSolution solve(const Vector& mu, const LambdaSequence& penalty, bool nonneg,
                         const SolverConfig& config) const;

    /// Feasibility-scaled dual point and the gap formula for the state.
    double gap_at(const Vector& w, const Vector& v, const Vector& alpha, const Vector& mu,
                  const LambdaSequence& penalty, bool nonneg, Vector* w_recon = nullptr) const;

    double eta() const { return eta_; }
    double phi() const { return phi_; }
    const Matrix& sigma() const { return sigma_; }
    bool sigma_singular() const { return sigma_singular_; }

  private:
    Matrix sigma_;
    double phi_;
    double eta_;
    Eigen::LDLT<Matrix> wupdate_;
    Eigen::SelfAdjointEigenSolver<Matrix> sigma_eig_;
    Vector inv_eigs_;       // pseudo-inverse eigenvalues of Sigma
    bool sigma_singular_ = false;
    bool gap_trusted_ = true;  // dual-consistency residual enforced

    Vector sigma_pinv_apply(const Vector& x) const;
    double null_component(const Vector& x) const;
};

/// One-shot interface over AdmmSolver.
SolverSolution admm_solve(const SolverProblem& problem, const SolverConfig& config = {});

/// Feasibility-scaled primal-dual gap for an arbitrary state, recomputing
/// the factorizations; solver-internal stopping uses the cached variant.
double dual_gap(const SolverSolution& state, const SolverProblem& problem);

/// Cyclic coordinate descent for the constant-penalty (lasso) problem.
/// Sweeps coordinates w_i = ST(gamma - z_i, lambda) / (phi sigma_ii) and
/// re-solves the budget multiplier gamma by bisection after each sweep.
/// Stops when the max absolute weight change over a sweep <= tol.
SolverSolution cycode_solve(const SolverProblem& problem, const SolverConfig& config = {});

/// w = Sigma^{-1} e / (e' Sigma^{-1} e). Throws on numerically singular input.
Vector gmv_closed_form(const Matrix& sigma);

/// w proportional to (phi Sigma + 2 lambda I)^{-1} e, normalized to the
/// budget; equals the GMV weights at lambda = 0.
Vector ridge_closed_form(const Matrix& sigma, double lambda, double phi = 1.0);

}  // namespace pfopt
