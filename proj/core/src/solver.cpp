#include "pfopt/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pfopt {

namespace {
constexpr double kBudgetTol = 1e-8;
constexpr double kSplitTol = 1e-6;
constexpr double kDualConsistencyTol = 1e-6;
constexpr double kTrustedCond = 1e9;

double soft_threshold(double x, double t) {
    if (x > t) return x - t;
    if (x < -t) return x + t;
    return 0.0;
}
}  // namespace

void SolverProblem::validate() const {
    require(sigma.rows() == sigma.cols(), "SolverProblem: sigma must be square");
    require(mu.size() == sigma.rows(), "SolverProblem: mu dimension mismatch");
    require(penalty.size() == sigma.rows(), "SolverProblem: penalty dimension mismatch");
    require(phi > 0.0, "SolverProblem: phi must be positive");
    require((sigma - sigma.transpose()).cwiseAbs().maxCoeff() <=
                1e-10 * std::max(1.0, sigma.cwiseAbs().maxCoeff()),
            "SolverProblem: sigma must be symmetric");
}

double objective(const Vector& w, const SolverProblem& problem) {
    require(w.size() == problem.size(), "objective: dimension mismatch");
    return 0.5 * problem.phi * w.dot(problem.sigma * w) - problem.mu.dot(w) +
           sorted_l1_norm(w, problem.penalty);
}

double shorting_amount(const Vector& w) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        if (w[i] < 0.0) s -= w[i];
    return s;
}

AdmmSolver::AdmmSolver(Matrix sigma, double phi, double eta)
    : sigma_(std::move(sigma)), phi_(phi), eta_(eta) {
    require(sigma_.rows() == sigma_.cols(), "AdmmSolver: sigma must be square");
    require(phi_ > 0.0 && eta_ > 0.0, "AdmmSolver: phi and eta must be positive");

    const Eigen::Index k = sigma_.rows();
    sigma_eig_.compute(sigma_);
    require(sigma_eig_.info() == Eigen::Success, "AdmmSolver: eigendecomposition failed");
    const Vector& eigs = sigma_eig_.eigenvalues();
    const double emax = std::max(eigs[k - 1], 0.0);
    require(eigs[0] >= -1e-9 * std::max(emax, 1.0), "AdmmSolver: sigma is not PSD");

    const double rank_tol = static_cast<double>(k) * std::numeric_limits<double>::epsilon() *
                            std::max(emax, 1e-300);
    inv_eigs_.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (eigs[i] <= rank_tol) {
            inv_eigs_[i] = 0.0;
            sigma_singular_ = true;
        } else {
            inv_eigs_[i] = 1.0 / eigs[i];
        }
    }
    const double emin_pos = sigma_singular_ ? 0.0 : eigs[0];
    gap_trusted_ = !sigma_singular_ && emax > 0.0 && emax / emin_pos <= kTrustedCond;

    Matrix system = phi_ * sigma_ + eta_ * Matrix::Identity(k, k);
    system.array() += eta_;  // eta * ee'
    wupdate_.compute(system);
    require(wupdate_.info() == Eigen::Success, "AdmmSolver: factorization failed");
}

Vector AdmmSolver::sigma_pinv_apply(const Vector& x) const {
    const Matrix& V = sigma_eig_.eigenvectors();
    return V * (inv_eigs_.asDiagonal() * (V.transpose() * x));
}

double AdmmSolver::null_component(const Vector& x) const {
    if (!sigma_singular_) return 0.0;
    const Matrix& V = sigma_eig_.eigenvectors();
    Vector coeffs = V.transpose() * x;
    double n = 0.0;
    for (Eigen::Index i = 0; i < coeffs.size(); ++i)
        if (inv_eigs_[i] == 0.0) n = std::max(n, std::abs(coeffs[i]));
    return n;
}

double AdmmSolver::gap_at(const Vector& w, const Vector& v, const Vector& alpha,
                          const Vector& mu, const LambdaSequence& penalty, bool nonneg,
                          Vector* w_recon) const {
    const Eigen::Index k = sigma_.rows();

    // Scale alpha into the dual-feasible set. For the long-only problem the
    // conjugate of rho + nonneg-indicator is finite iff the positive part of
    // alpha lies in C_lambda.
    Vector alpha_t;
    if (penalty.is_zero()) {
        alpha_t = nonneg ? alpha.cwiseMin(0.0).eval() : Vector::Zero(k).eval();
    } else {
        const double norm = nonneg ? dual_sorted_l1_norm(alpha.cwiseMax(0.0), penalty)
                                   : dual_sorted_l1_norm(alpha, penalty);
        alpha_t = alpha / std::max(1.0, norm);
    }

    // Budget-consistent beta from the dual reconstruction
    // w_tilde = phi^{-1} Sigma^+ (mu - alpha_t - beta e): e'w_tilde = 1.
    const Vector z = sigma_pinv_apply(mu - alpha_t);
    const Vector d = sigma_pinv_apply(Vector::Ones(k));
    const double ed = d.sum();
    if (ed <= 0.0) return std::numeric_limits<double>::infinity();
    const double beta_t = (z.sum() - phi_) / ed;
    const Vector w_tilde = (z - beta_t * d) / phi_;
    if (w_recon) *w_recon = w_tilde;

    if (sigma_singular_) {
        const Vector resid = mu - alpha_t - beta_t * Vector::Ones(k);
        if (null_component(resid) > 1e-7 * std::max(1.0, resid.cwiseAbs().maxCoeff()))
            return std::numeric_limits<double>::infinity();
    }

    const double rho_v = sorted_l1_norm(v, penalty);
    return -(alpha_t.dot(w) + beta_t * w.sum()) + beta_t + rho_v;
}

SolverSolution AdmmSolver::solve(const Vector& mu, const LambdaSequence& penalty, bool nonneg,
                                 const SolverConfig& config) const {
    const Eigen::Index k = sigma_.rows();
    require(mu.size() == k, "AdmmSolver::solve: mu dimension mismatch");
    require(penalty.size() == k, "AdmmSolver::solve: penalty dimension mismatch");
    require(config.tol > 0.0 && config.max_iter >= 1, "AdmmSolver::solve: bad config");

    const Vector ones = Vector::Ones(k);
    const LambdaSequence prox_seq = penalty.scaled(1.0 / eta_);

    SolverSolution sol;
    if (config.warm_start) {
        sol.w = config.warm_start->w;
        sol.v = config.warm_start->v;
        sol.alpha = config.warm_start->alpha;
        sol.beta = config.warm_start->beta;
        require(sol.w.size() == k && sol.v.size() == k && sol.alpha.size() == k,
                "AdmmSolver::solve: warm start dimension mismatch");
    } else {
        sol.w = ones / static_cast<double>(k);
        sol.v = sol.w;
        sol.alpha = Vector::Zero(k);
        sol.beta = 0.0;
    }

    const int check_every = (k <= 256) ? 1 : 10;
    Vector w_recon(k);

    int iter = 0;
    for (; iter < config.max_iter; ++iter) {
        sol.w = wupdate_.solve(mu - sol.alpha - sol.beta * ones + eta_ * (sol.v + ones));
        const Vector u = sol.w + sol.alpha / eta_;
        sol.v = nonneg ? prox_sorted_l1_nonneg(u, prox_seq) : prox_sorted_l1(u, prox_seq);
        sol.alpha += eta_ * (sol.w - sol.v);
        sol.beta += eta_ * (sol.w.sum() - 1.0);

        if ((iter + 1) % check_every == 0 || iter + 1 == config.max_iter) {
            const double budget_resid = std::abs(sol.w.sum() - 1.0);
            const double split_resid = (sol.w - sol.v).cwiseAbs().maxCoeff();
            if (budget_resid > kBudgetTol || split_resid > kSplitTol) continue;
            sol.gap = gap_at(sol.w, sol.v, sol.alpha, mu, penalty, nonneg, &w_recon);
            if (sol.gap > config.tol) continue;
            if (gap_trusted_ &&
                (sol.w - w_recon).cwiseAbs().maxCoeff() > kDualConsistencyTol)
                continue;
            sol.converged = true;
            ++iter;
            break;
        }
    }

    sol.iterations = iter;
    if (!sol.converged)
        sol.gap = gap_at(sol.w, sol.v, sol.alpha, mu, penalty, nonneg, &w_recon);
    sol.objective = 0.5 * phi_ * sol.w.dot(sigma_ * sol.w) - mu.dot(sol.w) +
                    sorted_l1_norm(sol.w, penalty);
    return sol;
}

SolverSolution admm_solve(const SolverProblem& problem, const SolverConfig& config) {
    problem.validate();
    AdmmSolver solver(problem.sigma, problem.phi, config.eta);
    return solver.solve(problem.mu, problem.penalty, problem.nonneg, config);
}

double dual_gap(const SolverSolution& state, const SolverProblem& problem) {
    problem.validate();
    AdmmSolver solver(problem.sigma, problem.phi, 1.0);
    return solver.gap_at(state.w, state.v, state.alpha, problem.mu, problem.penalty,
                         problem.nonneg);
}

SolverSolution cycode_solve(const SolverProblem& problem, const SolverConfig& config) {
    problem.validate();
    const Eigen::Index k = problem.size();
    require(problem.penalty.front() == problem.penalty.back(),
            "cycode_solve: penalty must be a constant sequence");
    require(!problem.nonneg, "cycode_solve: long-only constraint not supported");
    require((problem.sigma.diagonal().array() > 0.0).all(),
            "cycode_solve: zero diagonal variance");
    const double lam = problem.penalty.front();
    const double phi = problem.phi;

    Vector w = config.warm_start ? config.warm_start->w
                                 : Vector::Constant(k, 1.0 / static_cast<double>(k));
    Vector s = problem.sigma * w;
    int sweeps = 0;
    bool settled = false;

    // Gauss-Seidel sweeps at a fixed gamma until the per-sweep weight change
    // settles; returns the budget of the converged coordinatewise fixed point.
    auto descend_at = [&](double gamma) {
        settled = false;
        while (sweeps < config.max_iter) {
            ++sweeps;
            double max_change = 0.0;
            for (Eigen::Index i = 0; i < k; ++i) {
                const double zi = phi * (s[i] - problem.sigma(i, i) * w[i]) - problem.mu[i];
                const double wi = soft_threshold(gamma - zi, lam) / (phi * problem.sigma(i, i));
                const double delta = wi - w[i];
                if (delta != 0.0) {
                    s += delta * problem.sigma.col(i);
                    w[i] = wi;
                    max_change = std::max(max_change, std::abs(delta));
                }
            }
            if (max_change <= config.tol) {
                settled = true;
                break;
            }
        }
        return w.sum() - 1.0;
    };

    // The budget of the converged map is nondecreasing in gamma, so the
    // multiplier is found by bracketed bisection over full descents, each
    // warm-started from the previous weights.
    double lo = 0.0, hi = 0.0;
    double step = 1.0;
    double budget = descend_at(0.0);
    bool converged = settled;
    if (budget < 0.0) {
        while (budget < 0.0 && sweeps < config.max_iter) {
            lo = hi;
            hi += step;
            step *= 2.0;
            budget = descend_at(hi);
        }
    } else {
        while (budget > 0.0 && sweeps < config.max_iter) {
            hi = lo;
            lo -= step;
            step *= 2.0;
            budget = descend_at(lo);
        }
    }
    double gamma = 0.5 * (lo + hi);
    while (sweeps < config.max_iter) {
        if (std::abs(budget) <= 1e-10 || hi - lo <= 1e-14 * (1.0 + std::abs(hi))) break;
        gamma = 0.5 * (lo + hi);
        budget = descend_at(gamma);
        converged = settled;
        (budget < 0.0 ? lo : hi) = gamma;
    }
    converged = converged && settled && std::abs(w.sum() - 1.0) <= 1e-8;

    SolverSolution sol;
    sol.w = w;
    sol.v = w;
    sol.beta = gamma;
    sol.iterations = sweeps;
    sol.converged = converged;
    sol.objective = objective(w, problem);
    AdmmSolver gap_helper(problem.sigma, problem.phi, 1.0);
    // Stationarity duals: alpha = mu + gamma e - phi Sigma w on the active set.
    Vector alpha = problem.mu + gamma * Vector::Ones(k) - phi * (problem.sigma * w);
    sol.gap = gap_helper.gap_at(w, w, alpha, problem.mu, problem.penalty, false);
    sol.alpha = alpha;
    return sol;
}

Vector gmv_closed_form(const Matrix& sigma) {
    require(sigma.rows() == sigma.cols() && sigma.rows() >= 1, "gmv_closed_form: bad sigma");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma);
    require(eig.info() == Eigen::Success, "gmv_closed_form: eigendecomposition failed");
    const Vector& eigs = eig.eigenvalues();
    const double emax = eigs[eigs.size() - 1];
    require(eigs[0] > static_cast<double>(sigma.rows()) *
                          std::numeric_limits<double>::epsilon() * std::max(emax, 0.0),
            "gmv_closed_form: singular covariance");
    const Vector x = eig.eigenvectors() *
                     (eig.eigenvalues().cwiseInverse().asDiagonal() *
                      (eig.eigenvectors().transpose() * Vector::Ones(sigma.rows())));
    return x / x.sum();
}

Vector ridge_closed_form(const Matrix& sigma, double lambda, double phi) {
    require(sigma.rows() == sigma.cols() && sigma.rows() >= 1, "ridge_closed_form: bad sigma");
    require(lambda >= 0.0 && phi > 0.0, "ridge_closed_form: need lambda >= 0, phi > 0");
    const Eigen::Index k = sigma.rows();
    const Matrix system = phi * sigma + 2.0 * lambda * Matrix::Identity(k, k);
    Eigen::LDLT<Matrix> ldlt(system);
    require(ldlt.info() == Eigen::Success, "ridge_closed_form: singular system");
    const Vector x = ldlt.solve(Vector::Ones(k));
    const double total = x.sum();
    require(std::abs(total) > 1e-12, "ridge_closed_form: singular system");
    return x / total;
}

}  // namespace pfopt
