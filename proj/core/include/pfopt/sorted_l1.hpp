#pragma once

#include "pfopt/types.hpp"

namespace pfopt {

/// Nonincreasing, nonnegative penalty sequence lambda_1 >= ... >= lambda_k >= 0.
/// The i-th entry multiplies the i-th largest absolute weight.
class LambdaSequence {
  public:
    explicit LambdaSequence(Vector values);

    /// Constant sequence (the lasso special case); value >= 0.
    static LambdaSequence constant(Eigen::Index k, double value);

    /// All-zero sequence (no penalty).
    static LambdaSequence zero(Eigen::Index k);

    const Vector& values() const { return values_; }
    Eigen::Index size() const { return values_.size(); }
    double operator[](Eigen::Index i) const { return values_[i]; }
    double front() const { return values_[0]; }
    double back() const { return values_[values_.size() - 1]; }
    bool is_zero() const { return values_[0] == 0.0; }

    /// Sequence scaled by t >= 0 (used for prox with lambda/eta).
    LambdaSequence scaled(double t) const;

  private:
    Vector values_;
};

/// sum_i lambda_i |w|_(i), with |w|_(i) the i-th largest absolute entry.
double sorted_l1_norm(const Vector& w, const LambdaSequence& lambda);

/// argmin_v 1/2 ||v - y||^2 + sum_i lambda_i |v|_(i).
///
/// Stack-based pool-adjacent-violators: sort |y| descending, subtract
/// lambda, merge adjacent blocks whose running averages violate
/// monotonicity, clip at zero, undo sort and signs. O(k log k).
Vector prox_sorted_l1(const Vector& y, const LambdaSequence& lambda);

/// Prox of the sorted-l1 norm plus the nonnegative-orthant indicator:
/// prox_sorted_l1 applied to the positive part of y.
Vector prox_sorted_l1_nonneg(const Vector& y, const LambdaSequence& lambda);

/// Dual norm max_j (sum_{i<=j} |a|_(i)) / (sum_{i<=j} lambda_i), prefixes
/// with zero lambda-sum skipped. Value <= 1 iff a is dual feasible.
double dual_sorted_l1_norm(const Vector& a, const LambdaSequence& lambda);

/// Benjamini-Hochberg style sequence lambda_i = scale * PhiInv(1 - i*q/(2k)).
LambdaSequence bh_lambda_sequence(Eigen::Index k, double q, double scale);

/// n log-spaced values from lo to hi inclusive, 0 < lo < hi, n >= 2.
Vector log_grid(double lo, double hi, Eigen::Index n);

}  // namespace pfopt
