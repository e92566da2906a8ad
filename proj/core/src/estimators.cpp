#include "pfopt/estimators.hpp"

#include "pfopt/stats.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace pfopt {

Vector sample_mean(const ReturnsMatrix& R) {
    require(R.values.rows() >= 1 && R.values.cols() >= 1, "sample_mean: empty panel");
    return R.values.colwise().mean();
}

CovarianceEstimate sample_cov(const ReturnsMatrix& R) {
    const Eigen::Index T = R.values.rows();
    require(T >= 2, "sample_cov: need at least 2 periods");
    const Matrix centered = R.values.rowwise() - R.values.colwise().mean();
    Matrix S = centered.transpose() * centered / static_cast<double>(T - 1);
    S = 0.5 * (S + S.transpose()).eval();
    return {std::move(S), CovMethod::Sample};
}

namespace {

// Both intensities follow the published estimators computed in the 1/T
// convention on the demeaned panel; the result is rescaled to the T-1
// convention so the output is literally delta*F + (1-delta)*sample_cov.
struct LwParts {
    Matrix target;   // T-1 scale
    double delta;
};

LwParts lw_identity(const Matrix& centered) {
    const Eigen::Index T = centered.rows();
    const Eigen::Index k = centered.cols();
    const double Td = static_cast<double>(T);
    const Matrix S = centered.transpose() * centered / Td;

    const double m = S.trace() / static_cast<double>(k);
    const double d2 = (S - m * Matrix::Identity(k, k)).squaredNorm() / static_cast<double>(k);
    double b2bar = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        const Vector x = centered.row(t).transpose();
        b2bar += (x * x.transpose() - S).squaredNorm();
    }
    b2bar /= Td * Td * static_cast<double>(k);
    const double b2 = std::min(b2bar, d2);
    // Floored so the combination stays strictly PD even when the noise
    // estimate degenerates (T = 2 leaves a single demeaned dof).
    const double delta = (d2 > 0.0) ? std::max(b2 / d2, 1e-8) : 1.0;

    LwParts parts;
    parts.target = m * (Td / (Td - 1.0)) * Matrix::Identity(k, k);
    parts.delta = delta;
    return parts;
}

LwParts lw_constant_correlation(const Matrix& centered) {
    const Eigen::Index T = centered.rows();
    const Eigen::Index k = centered.cols();
    const double Td = static_cast<double>(T);
    const Matrix S = centered.transpose() * centered / Td;

    Vector sd = S.diagonal().cwiseSqrt();
    require((sd.array() > 0.0).all(), "ledoit_wolf_shrinkage: zero-variance asset");

    double rbar = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j) rbar += S(i, j) / (sd[i] * sd[j]);
    rbar /= static_cast<double>(k * (k - 1)) / 2.0;

    Matrix F = rbar * (sd * sd.transpose());
    F.diagonal() = S.diagonal();

    // pi-hat: variance of the sample covariance entries.
    Matrix pi_mat = Matrix::Zero(k, k);
    for (Eigen::Index t = 0; t < T; ++t) {
        const Vector x = centered.row(t).transpose();
        const Matrix dev = x * x.transpose() - S;
        pi_mat += dev.cwiseProduct(dev);
    }
    pi_mat /= Td;
    const double pi_hat = pi_mat.sum();

    // rho-hat: covariance between sample covariances and the target entries.
    double rho_diag = pi_mat.diagonal().sum();
    Matrix theta_ii = Matrix::Zero(k, k);  // asy cov of s_ii with s_ij
    Matrix theta_jj = Matrix::Zero(k, k);  // asy cov of s_jj with s_ij
    for (Eigen::Index t = 0; t < T; ++t) {
        const Vector x = centered.row(t).transpose();
        const Vector x2 = x.cwiseProduct(x) - S.diagonal();
        const Matrix dev = x * x.transpose() - S;
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) {
                theta_ii(i, j) += x2[i] * dev(i, j);
                theta_jj(i, j) += x2[j] * dev(i, j);
            }
    }
    theta_ii /= Td;
    theta_jj /= Td;
    double rho_off = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            if (i == j) continue;
            rho_off += 0.5 * rbar *
                       (sd[j] / sd[i] * theta_ii(i, j) + sd[i] / sd[j] * theta_jj(i, j));
        }
    const double rho_hat = rho_diag + rho_off;

    const double gamma_hat = (F - S).squaredNorm();
    double delta;
    if (gamma_hat > 0.0) {
        const double kappa = (pi_hat - rho_hat) / gamma_hat;
        delta = std::max(1e-8, std::min(1.0, kappa / Td));
    } else {
        delta = 1.0;
    }

    LwParts parts;
    parts.target = F * (Td / (Td - 1.0));
    parts.delta = delta;
    return parts;
}

}  // namespace

double ledoit_wolf_intensity(const ReturnsMatrix& R, ShrinkageTarget target) {
    const Eigen::Index T = R.values.rows();
    require(T >= 2, "ledoit_wolf_shrinkage: need at least 2 periods");
    const Matrix centered = R.values.rowwise() - R.values.colwise().mean();
    require(centered.squaredNorm() > 0.0, "ledoit_wolf_shrinkage: degenerate panel");
    const LwParts parts = (target == ShrinkageTarget::ScaledIdentity)
                              ? lw_identity(centered)
                              : lw_constant_correlation(centered);
    return parts.delta;
}

CovarianceEstimate ledoit_wolf_shrinkage(const ReturnsMatrix& R, ShrinkageTarget target) {
    const Eigen::Index T = R.values.rows();
    require(T >= 2, "ledoit_wolf_shrinkage: need at least 2 periods");
    const Matrix centered = R.values.rowwise() - R.values.colwise().mean();
    require(centered.squaredNorm() > 0.0, "ledoit_wolf_shrinkage: degenerate panel");

    const LwParts parts = (target == ShrinkageTarget::ScaledIdentity)
                              ? lw_identity(centered)
                              : lw_constant_correlation(centered);
    const Matrix S =
        centered.transpose() * centered / static_cast<double>(T - 1);
    Matrix out = parts.delta * parts.target + (1.0 - parts.delta) * S;
    out = 0.5 * (out + out.transpose()).eval();
    return {std::move(out), CovMethod::Shrinkage};
}

double condition_number(const CovarianceEstimate& sigma) {
    require(sigma.matrix.size() > 0 && sigma.matrix.squaredNorm() > 0.0,
            "condition_number: zero matrix");
    Eigen::JacobiSVD<Matrix> svd(sigma.matrix);
    const Vector& sv = svd.singularValues();
    const double smax = sv[0];
    const double smin = sv[sv.size() - 1];
    const double floor = std::max(1e-300, static_cast<double>(sv.size()) *
                                              std::numeric_limits<double>::epsilon() * smax);
    if (smin <= floor) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

CorrelationSummary correlation_summary(const CovarianceEstimate& sigma) {
    const Eigen::Index k = sigma.size();
    require(k >= 2, "correlation_summary: need at least 2 assets");
    require((sigma.matrix.diagonal().array() > 0.0).all(),
            "correlation_summary: zero-variance asset");
    std::vector<double> corr;
    corr.reserve(static_cast<std::size_t>(k * (k - 1) / 2));
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = i + 1; j < k; ++j)
            corr.push_back(sigma.matrix(i, j) /
                           std::sqrt(sigma.matrix(i, i) * sigma.matrix(j, j)));
    CorrelationSummary s{};
    s.mean = mean_of(corr);
    s.median = quantile_type7(corr, 0.5);
    s.q1 = quantile_type7(corr, 0.25);
    s.q3 = quantile_type7(corr, 0.75);
    return s;
}

}  // namespace pfopt
