#include "pfopt/simulation.hpp"

#include "pfopt/estimators.hpp"
#include "pfopt/rng.hpp"

#include <cmath>

namespace pfopt {

namespace {

Matrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = rng.next_normal();
    return m;
}

std::vector<std::string> index_labels(const char* prefix, Eigen::Index n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
    return labels;
}

std::vector<std::string> date_labels(Eigen::Index n) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        std::string s = std::to_string(i + 1);
        labels.push_back(std::string(6 - std::min<std::size_t>(6, s.size()), '0') + s);
    }
    return labels;
}

SimulatedMarket assemble(FactorModelSpec spec, Rng& rng) {
    const Eigen::Index r = spec.loadings.rows();
    const Eigen::Index k = spec.loadings.cols();
    const Eigen::Index t = spec.periods;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(spec.factor_cov);
    require(eig.info() == Eigen::Success && eig.eigenvalues()[0] >= -1e-12,
            "simulation: factor covariance not PSD");
    const Matrix factor_half =
        eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

    Matrix F = normal_matrix(rng, t, r) * factor_half.transpose();
    F.rowwise() += spec.factor_mean.transpose();

    Matrix eps = normal_matrix(rng, t, k);
    const Vector noise_sd = spec.noise_var.cwiseSqrt();
    eps = eps.array().rowwise() * noise_sd.transpose().array();

    SimulatedMarket market;
    market.returns.values = F * spec.loadings + eps;
    market.returns.dates = date_labels(t);
    market.returns.tickers = index_labels("A", k);
    Matrix sigma = spec.loadings.transpose() * spec.factor_cov * spec.loadings;
    sigma += Matrix(spec.noise_var.asDiagonal());
    sigma = 0.5 * (sigma + sigma.transpose()).eval();
    market.sigma_true = {std::move(sigma), CovMethod::TrueModel};
    market.mu_true = spec.loadings.transpose() * spec.factor_mean;
    market.spec = std::move(spec);
    return market;
}

}  // namespace

SimulatedMarket hidden_factor_market(std::uint64_t seed) {
    const Eigen::Index t = 50, k = 12, r = 3;
    Matrix B(r, k);
    const Vector col_a = (Vector(3) << 0.77, 0.64, 0.0).finished();
    const Vector col_b = (Vector(3) << 0.9, 0.0, -0.42).finished();
    const Vector col_c = (Vector(3) << 0.0, 0.31, 0.64).finished();
    for (Eigen::Index j = 0; j < 4; ++j) {
        B.col(j) = col_a;
        B.col(4 + j) = col_b;
        B.col(8 + j) = col_c;
    }

    FactorModelSpec spec;
    spec.loadings = B;
    spec.factor_mean = Vector::Zero(r);
    spec.factor_cov = Matrix::Identity(r, r);
    spec.noise_var = Vector::Constant(k, 0.05);
    spec.periods = t;
    spec.seed = seed;

    Rng rng(seed, /*stream=*/1);
    return assemble(std::move(spec), rng);
}

SimulatedMarket calibrated_market(std::uint64_t seed) {
    const Eigen::Index t = 500, k = 500, r = 3;

    Vector mu_B(3);
    mu_B << -0.0679, 0.1505, -0.0203;
    Matrix sigma_B(3, 3);
    sigma_B << 0.0062, -0.0016, 0.0020,
              -0.0016, 0.0109, 0.0012,
               0.0020, 0.0012, 0.0173;
    Vector mu_F(3);
    mu_F << 0.00022, 0.00012, -0.00018;
    Matrix sigma_F(3, 3);
    sigma_F << 0.000157, 0.000015, 0.000028,
               0.000015, 0.000033, -0.000016,
               0.000028, -0.000016, 0.000034;

    Rng rng(seed, /*stream=*/2);

    Eigen::SelfAdjointEigenSolver<Matrix> eig(sigma_B);
    const Matrix loading_half =
        eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
    Matrix B = loading_half * normal_matrix(rng, r, k);
    B.colwise() += mu_B;

    Vector noise_var(k);
    for (Eigen::Index i = 0; i < k; ++i) noise_var[i] = rng.next_gamma(7.2609, 0.0028);

    FactorModelSpec spec;
    spec.loadings = std::move(B);
    spec.factor_mean = mu_F;
    spec.factor_cov = sigma_F;
    spec.noise_var = std::move(noise_var);
    spec.periods = t;
    spec.seed = seed;
    return assemble(std::move(spec), rng);
}

SimulatedMarket constant_corr_market(std::uint64_t seed, double rho, Eigen::Index n,
                                     Eigen::Index p) {
    require(n >= 2 && p >= 2, "constant_corr_market: need n >= 2, p >= 2");
    require(rho > -1.0 / static_cast<double>(p - 1) && rho < 1.0,
            "constant_corr_market: rho outside the PSD range");

    Rng rng(seed, /*stream=*/3);
    Matrix R(n, p);
    if (rho >= 0.0) {
        // x = sqrt(rho) g e + sqrt(1-rho) z reproduces the constant-rho model.
        const double a = std::sqrt(rho);
        const double b = std::sqrt(1.0 - rho);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double g = rng.next_normal();
            for (Eigen::Index j = 0; j < p; ++j) R(i, j) = a * g + b * rng.next_normal();
        }
    } else {
        Matrix sigma = Matrix::Constant(p, p, rho);
        sigma.diagonal().setOnes();
        Eigen::LLT<Matrix> llt(sigma);
        require(llt.info() == Eigen::Success, "constant_corr_market: factorization failed");
        R = normal_matrix(rng, n, p) * llt.matrixL().transpose();
    }

    SimulatedMarket market;
    market.returns.values = std::move(R);
    market.returns.dates = date_labels(n);
    market.returns.tickers = index_labels("A", p);
    Matrix sigma = Matrix::Constant(p, p, rho);
    sigma.diagonal().setOnes();
    market.sigma_true = {std::move(sigma), CovMethod::TrueModel};
    market.mu_true = Vector::Zero(p);
    market.spec.periods = n;
    market.spec.seed = seed;
    return market;
}

RiskTriple risk_triple(const Vector& w_hat, const Vector& w_opt, const Matrix& sigma_true,
                       const Matrix& sigma_hat) {
    require(w_hat.size() == sigma_true.rows() && w_opt.size() == sigma_true.rows() &&
                sigma_hat.rows() == sigma_true.rows(),
            "risk_triple: dimension mismatch");
    return {w_hat.dot(sigma_hat * w_hat), w_hat.dot(sigma_true * w_hat),
            w_opt.dot(sigma_true * w_opt)};
}

RiskBoundReport verify_risk_bounds(const Vector& w_hat, const Vector& w_opt,
                                   const Matrix& sigma_true, const Matrix& sigma_hat,
                                   const LambdaSequence& lambda) {
    RiskBoundReport report;
    if (lambda.back() <= 0.0) return report;  // bounds undefined
    report.applicable = true;

    const double c_hat = sorted_l1_norm(w_hat, lambda) / lambda.back();
    const double c_opt = sorted_l1_norm(w_opt, lambda) / lambda.back();
    report.c = std::max(c_hat, c_opt);
    report.sigma_err = (sigma_hat - sigma_true).cwiseAbs().maxCoeff();

    const RiskTriple risks = risk_triple(w_hat, w_opt, sigma_true, sigma_hat);
    const double c2e = report.c * report.c * report.sigma_err;
    report.lhs[0] = std::abs(risks.actual - risks.oracle);
    report.rhs[0] = 2.0 * c2e;
    report.lhs[1] = std::abs(risks.actual - risks.empirical);
    report.rhs[1] = c2e;
    report.lhs[2] = std::abs(risks.oracle - risks.empirical);
    report.rhs[2] = c2e;
    for (int i = 0; i < 3; ++i) report.pass[i] = report.lhs[i] <= report.rhs[i] + 1e-12;
    return report;
}

FrontierProfile frontier_sweep(const SimulatedMarket& market, const Vector& grid,
                               const FrontierSpec& spec, const SolverConfig& config) {
    SweepInputs inputs;
    inputs.sigma_hat = sample_cov(market.returns).matrix;
    inputs.mu_hat = spec.use_estimated_mean ? sample_mean(market.returns)
                                            : Vector::Zero(market.returns.assets());
    inputs.sigma_true = market.sigma_true.matrix;
    inputs.mu_true = spec.use_estimated_mean ? market.mu_true
                                             : Vector::Zero(market.returns.assets());
    inputs.phi = 1.0;
    PathSpec path{spec.family, spec.nonneg, spec.q};
    return sweep_penalty_path(inputs, grid, path, config);
}

}  // namespace pfopt
