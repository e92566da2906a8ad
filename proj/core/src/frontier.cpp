#include "pfopt/frontier.hpp"

#include "pfopt/strategies.hpp"

#include <cmath>
#include <limits>

namespace pfopt {

namespace {
constexpr double kLongOnlyTol = 1e-8;

int count_active(const Vector& v) {
    int n = 0;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) ++n;
    return n;
}
}  // namespace

LambdaSequence penalty_for_scale(Eigen::Index k, double lambda1, const PathSpec& spec) {
    require(lambda1 >= 0.0, "penalty_for_scale: negative scale");
    if (spec.family == PenaltyFamily::Lasso) return LambdaSequence::constant(k, lambda1);
    if (lambda1 == 0.0) return LambdaSequence::zero(k);
    const LambdaSequence unit = bh_lambda_sequence(k, spec.q, 1.0);
    return unit.scaled(lambda1 / unit.front());
}

int FrontierProfile::first_long_only_index() const {
    for (std::size_t i = 0; i < points.size(); ++i)
        if (points[i].shorting <= kLongOnlyTol) return static_cast<int>(i);
    return -1;
}

int FrontierProfile::first_ew_index() const {
    const double target = 1.0 / static_cast<double>(assets);
    for (std::size_t i = 0; i < points.size(); ++i) {
        const Vector& w = points[i].weights;
        if ((w.array() - target).abs().maxCoeff() <= ew_tol) return static_cast<int>(i);
    }
    return -1;
}

FrontierProfile sweep_penalty_path(const SweepInputs& inputs, const Vector& grid,
                                   const PathSpec& spec, const SolverConfig& config) {
    const Eigen::Index k = inputs.sigma_hat.rows();
    require(grid.size() >= 1, "sweep_penalty_path: empty grid");
    for (Eigen::Index i = 0; i + 1 < grid.size(); ++i)
        require(grid[i] < grid[i + 1], "sweep_penalty_path: grid must be increasing");
    const bool with_oracle = inputs.sigma_true.has_value();
    if (with_oracle) {
        require(inputs.sigma_true->rows() == k, "sweep_penalty_path: oracle sigma mismatch");
        require(inputs.mu_true.has_value() && inputs.mu_true->size() == k,
                "sweep_penalty_path: oracle mu missing");
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    FrontierProfile profile;
    profile.assets = k;
    profile.points.resize(static_cast<std::size_t>(grid.size()));

    AdmmSolver est_solver(inputs.sigma_hat, inputs.phi, config.eta);
    std::optional<AdmmSolver> oracle_solver;
    if (with_oracle) oracle_solver.emplace(*inputs.sigma_true, inputs.phi, config.eta);

    SolverConfig point_config = config;
    std::optional<WarmStart> oracle_warm;
    for (Eigen::Index g = 0; g < grid.size(); ++g) {
        const LambdaSequence penalty = penalty_for_scale(k, grid[g], spec);
        FrontierPoint& pt = profile.points[static_cast<std::size_t>(g)];
        pt.lambda_scale = grid[g];

        const SolverSolution est =
            est_solver.solve(inputs.mu_hat, penalty, spec.nonneg, point_config);
        pt.weights = est.v;
        pt.weights_budget = est.w;
        pt.converged = est.converged;
        pt.active_count = count_active(est.v);
        pt.group_count = static_cast<int>(extract_groups(est.v, 1e-6).size());
        pt.shorting = shorting_amount(est.v);
        pt.risk_empirical = est.w.dot(inputs.sigma_hat * est.w);
        point_config.warm_start = WarmStart{est.w, est.v, est.alpha, est.beta};

        if (with_oracle) {
            SolverConfig oracle_config = config;
            oracle_config.warm_start = oracle_warm;
            const SolverSolution orc =
                oracle_solver->solve(*inputs.mu_true, penalty, spec.nonneg, oracle_config);
            pt.weights_oracle = orc.v;
            pt.converged_oracle = orc.converged;
            pt.active_count_oracle = count_active(orc.v);
            pt.group_count_oracle = static_cast<int>(extract_groups(orc.v, 1e-6).size());
            pt.shorting_oracle = shorting_amount(orc.v);
            pt.risk_actual = est.w.dot(*inputs.sigma_true * est.w);
            pt.risk_oracle = orc.w.dot(*inputs.sigma_true * orc.w);
            oracle_warm = WarmStart{orc.w, orc.v, orc.alpha, orc.beta};
        } else {
            pt.risk_actual = nan;
            pt.risk_oracle = nan;
            pt.active_count_oracle = -1;
            pt.group_count_oracle = -1;
            pt.shorting_oracle = nan;
        }
    }

    // Reference portfolios: GMV (pseudo-inverse fallback flagged), long-only
    // minimum variance, and equal weights.
    auto fill_reference = [&](ReferencePoint& ref, const Vector& w) {
        ref.weights = w;
        ref.risk_empirical = w.dot(inputs.sigma_hat * w);
        ref.risk_actual = with_oracle ? w.dot(*inputs.sigma_true * w) : nan;
    };
    try {
        fill_reference(profile.gmv, gmv_closed_form(inputs.sigma_hat));
    } catch (const std::invalid_argument&) {
        Eigen::SelfAdjointEigenSolver<Matrix> eig(inputs.sigma_hat);
        Vector inv = eig.eigenvalues();
        const double tol = static_cast<double>(k) * std::numeric_limits<double>::epsilon() *
                           std::max(inv[k - 1], 0.0);
        for (Eigen::Index i = 0; i < k; ++i) inv[i] = (inv[i] > tol) ? 1.0 / inv[i] : 0.0;
        Vector x = eig.eigenvectors() *
                   (inv.asDiagonal() * (eig.eigenvectors().transpose() * Vector::Ones(k)));
        fill_reference(profile.gmv, Vector(x / x.sum()));
        profile.gmv.flagged = true;
    }
    {
        SolverConfig lo_config = config;
        const SolverSolution lo =
            est_solver.solve(Vector::Zero(k), LambdaSequence::zero(k), true, lo_config);
        fill_reference(profile.gmv_lo, lo.w);
        profile.gmv_lo.flagged = !lo.converged;
    }
    fill_reference(profile.ew, Vector::Constant(k, 1.0 / static_cast<double>(k)));

    return profile;
}

}  // namespace pfopt
