#pragma once

#include "pfopt/frontier.hpp"
#include "pfopt/types.hpp"

#include <cstdint>

namespace pfopt {

/// Factor-model data generating process R = F B + eps.
struct FactorModelSpec {
    Matrix loadings;       // r x k
    Vector factor_mean;    // r
    Matrix factor_cov;     // r x r, PSD
    Vector noise_var;      // k per-asset noise variances, > 0
    Eigen::Index periods = 0;
    std::uint64_t seed = 0;
};

/// A simulated market: the drawn panel plus the exact moments it came from.
struct SimulatedMarket {
    ReturnsMatrix returns;
    CovarianceEstimate sigma_true;  // method == TrueModel
    Vector mu_true;
    FactorModelSpec spec;
};

/// Three hidden factors, twelve assets in three blocks of four, t = 50,
/// isotropic noise with variance 0.05; Sigma_true = B'B + 0.05 I, mu = 0.
SimulatedMarket hidden_factor_market(std::uint64_t seed);

/// Equity-calibrated design: k = 500 loading columns drawn from a fixed
/// trivariate normal, factors from another, per-asset gamma noise
/// variances (shape 7.2609, scale 0.0028), t = 500; mu_true = B' mu_F.
SimulatedMarket calibrated_market(std::uint64_t seed);

/// n draws of p assets from the constant-correlation normal model.
SimulatedMarket constant_corr_market(std::uint64_t seed, double rho, Eigen::Index n,
                                     Eigen::Index p);

struct RiskTriple {
    double empirical;  // w_hat' Sigma_hat w_hat
    double actual;     // w_hat' Sigma w_hat
    double oracle;     // w_opt' Sigma w_opt
};

RiskTriple risk_triple(const Vector& w_hat, const Vector& w_opt, const Matrix& sigma_true,
                       const Matrix& sigma_hat);

/// The three pairwise risk-difference bounds with c = max over both
/// solutions of rho_lambda(w)/lambda_k.
struct RiskBoundReport {
    bool applicable = false;  // lambda_k > 0
    double c = 0.0;
    double sigma_err = 0.0;  // max componentwise |Sigma_hat - Sigma|
    double lhs[3] = {0, 0, 0};
    double rhs[3] = {0, 0, 0};
    bool pass[3] = {false, false, false};
    bool all_pass() const { return applicable && pass[0] && pass[1] && pass[2]; }
};

RiskBoundReport verify_risk_bounds(const Vector& w_hat, const Vector& w_opt,
                                   const Matrix& sigma_true, const Matrix& sigma_hat,
                                   const LambdaSequence& lambda);

struct FrontierSpec {
    PenaltyFamily family = PenaltyFamily::Slope;
    bool nonneg = false;
    bool use_estimated_mean = false;  // false: minimum variance (mu = 0)
    double q = 0.01;
};

/// Sweeps the estimated and oracle problems over the grid, recording the
/// risk triple, structure counts, and the GMV / GMV-LO / EW references.
FrontierProfile frontier_sweep(const SimulatedMarket& market, const Vector& grid,
                               const FrontierSpec& spec, const SolverConfig& config = {});

}  // namespace pfopt
