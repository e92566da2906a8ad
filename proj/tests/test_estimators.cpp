#include <doctest.h>

#include <pfopt/estimators.hpp>
#include <pfopt/rng.hpp>
#include <pfopt/simulation.hpp>

#include <cmath>

using namespace pfopt;

namespace {

ReturnsMatrix panel_from(const Matrix& values) {
    ReturnsMatrix R;
    R.values = values;
    for (Eigen::Index t = 0; t < values.rows(); ++t) R.dates.push_back(std::to_string(100 + t));
    for (Eigen::Index j = 0; j < values.cols(); ++j) R.tickers.push_back("A" + std::to_string(j));
    return R;
}

// Second, independent implementation of the identity-target estimator.
// Plain loops, no shared code with the library path.
Matrix lw_identity_oracle(const Matrix& raw) {
    const Eigen::Index T = raw.rows(), k = raw.cols();
    Matrix X = raw;
    for (Eigen::Index j = 0; j < k; ++j) {
        double m = 0.0;
        for (Eigen::Index t = 0; t < T; ++t) m += raw(t, j);
        m /= static_cast<double>(T);
        for (Eigen::Index t = 0; t < T; ++t) X(t, j) -= m;
    }
    Matrix S = Matrix::Zero(k, k);
    for (Eigen::Index t = 0; t < T; ++t)
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) S(i, j) += X(t, i) * X(t, j);
    S /= static_cast<double>(T);

    double m = 0.0;
    for (Eigen::Index i = 0; i < k; ++i) m += S(i, i);
    m /= static_cast<double>(k);

    double d2 = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            const double target = (i == j) ? m : 0.0;
            d2 += (S(i, j) - target) * (S(i, j) - target);
        }
    d2 /= static_cast<double>(k);

    double b2bar = 0.0;
    for (Eigen::Index t = 0; t < T; ++t) {
        double norm2 = 0.0;
        for (Eigen::Index i = 0; i < k; ++i)
            for (Eigen::Index j = 0; j < k; ++j) {
                const double dev = X(t, i) * X(t, j) - S(i, j);
                norm2 += dev * dev;
            }
        b2bar += norm2;
    }
    b2bar /= static_cast<double>(T) * static_cast<double>(T) * static_cast<double>(k);
    const double delta = std::min(b2bar, d2) / d2;

    Matrix out = (1.0 - delta) * S;
    for (Eigen::Index i = 0; i < k; ++i) out(i, i) += delta * m;
    return out * (static_cast<double>(T) / static_cast<double>(T - 1));
}

}  // namespace

TEST_CASE("sample_mean examples") {
    Matrix one(2, 2);
    one << 0.1, 0.1, 0.3, 0.3;
    CHECK(sample_mean(panel_from(one))[0] == doctest::Approx(0.2));

    CHECK(sample_mean(panel_from(Matrix::Constant(5, 3, 0.07)))[2] == doctest::Approx(0.07));

    const SimulatedMarket mkt = hidden_factor_market(5);
    const Vector mean = sample_mean(mkt.returns);
    for (Eigen::Index j = 0; j < mkt.returns.assets(); ++j) {
        double s = 0.0;
        for (Eigen::Index t = 0; t < mkt.returns.periods(); ++t) s += mkt.returns.values(t, j);
        CHECK(mean[j] == doctest::Approx(s / 50.0).epsilon(1e-14));
    }
}

TEST_CASE("sample_cov examples") {
    SUBCASE("anticorrelated pair") {
        Rng rng(21, 0);
        Matrix values(40, 2);
        for (Eigen::Index t = 0; t < 40; ++t) {
            values(t, 0) = rng.next_normal();
            values(t, 1) = -values(t, 0);
        }
        const CovarianceEstimate cov = sample_cov(panel_from(values));
        CHECK(cov.matrix(0, 1) == doctest::Approx(-cov.matrix(0, 0)).epsilon(1e-12));
    }
    SUBCASE("hand-computed single-asset variance") {
        Matrix values(2, 2);
        values << 0.1, 0.0, 0.3, 0.0;
        const CovarianceEstimate cov = sample_cov(panel_from(values));
        CHECK(cov.matrix(0, 0) == doctest::Approx(0.02).epsilon(1e-14));
    }
    SUBCASE("duplicated columns are rank deficient with equal entries") {
        Rng rng(22, 0);
        Matrix values(30, 3);
        for (Eigen::Index t = 0; t < 30; ++t) {
            values(t, 0) = rng.next_normal();
            values(t, 1) = values(t, 0);
            values(t, 2) = rng.next_normal();
        }
        const CovarianceEstimate cov = sample_cov(panel_from(values));
        CHECK(cov.matrix(0, 0) == doctest::Approx(cov.matrix(0, 1)).epsilon(1e-14));
        CHECK(cov.matrix(0, 0) == doctest::Approx(cov.matrix(1, 1)).epsilon(1e-14));
        CHECK(condition_number(cov) == std::numeric_limits<double>::infinity());
    }
    SUBCASE("row permutation invariance") {
        Rng rng(23, 0);
        Matrix values(20, 4);
        for (Eigen::Index t = 0; t < 20; ++t)
            for (Eigen::Index j = 0; j < 4; ++j) values(t, j) = rng.next_normal();
        const Matrix base = sample_cov(panel_from(values)).matrix;
        Matrix shuffled = values;
        shuffled.row(0).swap(shuffled.row(7));
        shuffled.row(3).swap(shuffled.row(19));
        const Matrix perm = sample_cov(panel_from(shuffled)).matrix;
        CHECK((base - perm).cwiseAbs().maxCoeff() <= 1e-15);
    }
    CHECK_THROWS(sample_cov(panel_from(Matrix::Zero(1, 2))));
}

TEST_CASE("ledoit_wolf_shrinkage") {
    SUBCASE("matches the independent oracle on a constant-correlation draw") {
        const SimulatedMarket mkt = constant_corr_market(77, 0.8, 500, 250);
        const Matrix mine = ledoit_wolf_shrinkage(mkt.returns).matrix;
        const Matrix oracle = lw_identity_oracle(mkt.returns.values);
        CHECK((mine - oracle).cwiseAbs().maxCoeff() <= 1e-10);
    }
    SUBCASE("intensity vanishes as T grows") {
        // Truth away from the target (correlated draws), T = 100 k.
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const SimulatedMarket mkt = constant_corr_market(seed, 0.5, 400, 4);
            CHECK(ledoit_wolf_intensity(mkt.returns) <= 0.2);
        }
    }
    SUBCASE("near-singular panel comes out positive definite") {
        Matrix values(2, 2);
        values << 0.011, 0.02, -0.008, 0.021;
        const CovarianceEstimate cov = ledoit_wolf_shrinkage(panel_from(values));
        Eigen::SelfAdjointEigenSolver<Matrix> eig(cov.matrix);
        CHECK(eig.eigenvalues()[0] > 0.0);
        CHECK(std::isfinite(condition_number(cov)));
    }
    SUBCASE("eigenvalues stay inside the combined range") {
        for (int trial = 0; trial < 20; ++trial) {
            const SimulatedMarket mkt = constant_corr_market(900 + trial, 0.3, 60, 10);
            const ReturnsMatrix& R = mkt.returns;
            const Matrix S = sample_cov(R).matrix;
            const Matrix shrunk = ledoit_wolf_shrinkage(R).matrix;
            const double m = S.trace() / 10.0;
            Eigen::SelfAdjointEigenSolver<Matrix> es(S), esh(shrunk);
            const double lo = std::min(es.eigenvalues()[0], m);
            const double hi = std::max(es.eigenvalues()[9], m);
            CHECK(esh.eigenvalues()[0] >= lo - 1e-10);
            CHECK(esh.eigenvalues()[9] <= hi + 1e-10);
        }
    }
    SUBCASE("constant-correlation target also regularizes") {
        const SimulatedMarket mkt = constant_corr_market(78, 0.5, 30, 10);
        const CovarianceEstimate cov =
            ledoit_wolf_shrinkage(mkt.returns, ShrinkageTarget::ConstantCorrelation);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(cov.matrix);
        CHECK(eig.eigenvalues()[0] > 0.0);
        const double delta =
            ledoit_wolf_intensity(mkt.returns, ShrinkageTarget::ConstantCorrelation);
        CHECK(delta >= 0.0);
        CHECK(delta <= 1.0);
    }
    CHECK_THROWS(ledoit_wolf_shrinkage(panel_from(Matrix::Zero(10, 3))));
}

TEST_CASE("condition_number examples") {
    CHECK(condition_number({Matrix::Identity(4, 4), CovMethod::Sample}) == doctest::Approx(1.0));
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 4.0;
    d(1, 1) = 1.0;
    CHECK(condition_number({d, CovMethod::Sample}) == doctest::Approx(4.0));

    // scale invariance
    Rng rng(25, 0);
    Matrix a(6, 6);
    for (Eigen::Index i = 0; i < 6; ++i)
        for (Eigen::Index j = 0; j < 6; ++j) a(i, j) = rng.next_normal();
    Matrix psd = a * a.transpose() + Matrix::Identity(6, 6);
    const double base = condition_number({psd, CovMethod::Sample});
    CHECK(condition_number({Matrix(3.7 * psd), CovMethod::Sample}) ==
          doctest::Approx(base).epsilon(1e-10));
}

TEST_CASE("correlation_summary") {
    SUBCASE("constant correlation matrix") {
        Matrix sigma = Matrix::Constant(5, 5, 0.2);
        sigma.diagonal().setOnes();
        const CorrelationSummary s = correlation_summary({sigma, CovMethod::Sample});
        CHECK(s.mean == doctest::Approx(0.2));
        CHECK(s.median == doctest::Approx(0.2));
        CHECK(s.q1 == doctest::Approx(0.2));
        CHECK(s.q3 == doctest::Approx(0.2));
    }
    SUBCASE("two assets give a single value everywhere") {
        Matrix sigma(2, 2);
        sigma << 2.0, 0.6, 0.6, 1.0;
        const CorrelationSummary s = correlation_summary({sigma, CovMethod::Sample});
        const double r = 0.6 / std::sqrt(2.0);
        CHECK(s.mean == doctest::Approx(r));
        CHECK(s.median == doctest::Approx(r));
        CHECK(s.q1 == doctest::Approx(r));
        CHECK(s.q3 == doctest::Approx(r));
    }
    SUBCASE("hidden-factor blocks bracket the mean") {
        const SimulatedMarket mkt = hidden_factor_market(1);
        const CorrelationSummary s = correlation_summary(mkt.sigma_true);
        // hand-computed block values of B'B + 0.05 I
        const double within_min = 0.5057 / 0.5557;  // weakest within-group correlation
        const double cross_mean = (16.0 * (0.693 / std::sqrt(1.0525 * 1.0364)) +
                                   16.0 * (0.1984 / std::sqrt(1.0525 * 0.5557)) +
                                   16.0 * (-0.2688 / std::sqrt(1.0364 * 0.5557))) /
                                  48.0;
        CHECK(s.mean > cross_mean);
        CHECK(s.mean < within_min);
    }
    SUBCASE("zero-variance asset throws") {
        Matrix sigma = Matrix::Identity(3, 3);
        sigma(1, 1) = 0.0;
        CHECK_THROWS(correlation_summary({sigma, CovMethod::Sample}));
    }
}
