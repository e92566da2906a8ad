#pragma once

#include "pfopt/types.hpp"

namespace pfopt {

/// Columnwise arithmetic mean of the panel.
Vector sample_mean(const ReturnsMatrix& R);

/// Unbiased sample covariance (divisor T-1), centered at sample_mean.
CovarianceEstimate sample_cov(const ReturnsMatrix& R);

enum class ShrinkageTarget { ScaledIdentity, ConstantCorrelation };

/// Ledoit-Wolf shrinkage delta*F + (1-delta)*S with analytic intensity.
///
/// ScaledIdentity uses F = (tr S / k) I (the 2004 well-conditioned
/// estimator); ConstantCorrelation uses the mean-correlation target with
/// the matching intensity formula. Output is strictly positive definite
/// whenever the target is.
CovarianceEstimate ledoit_wolf_shrinkage(const ReturnsMatrix& R,
                                         ShrinkageTarget target = ShrinkageTarget::ScaledIdentity);

/// Shrinkage intensity delta in [0,1] for the given panel and target.
double ledoit_wolf_intensity(const ReturnsMatrix& R,
                             ShrinkageTarget target = ShrinkageTarget::ScaledIdentity);

/// Ratio of largest to smallest singular value; +inf when the matrix is
/// numerically rank deficient.
double condition_number(const CovarianceEstimate& sigma);

struct CorrelationSummary {
    double mean;
    double median;
    double q1;
    double q3;
};

/// Summary statistics over the k(k-1)/2 off-diagonal correlations.
CorrelationSummary correlation_summary(const CovarianceEstimate& sigma);

}  // namespace pfopt
