#include "pfopt/sorted_l1.hpp"

#include "pfopt/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace pfopt {

LambdaSequence::LambdaSequence(Vector values) : values_(std::move(values)) {
    require(values_.size() >= 1, "LambdaSequence: empty");
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        require(std::isfinite(values_[i]), "LambdaSequence: non-finite entry");
        if (i + 1 < values_.size())
            require(values_[i] >= values_[i + 1], "LambdaSequence: values must be nonincreasing");
    }
    require(values_[values_.size() - 1] >= 0.0, "LambdaSequence: values must be nonnegative");
}

LambdaSequence LambdaSequence::constant(Eigen::Index k, double value) {
    require(k >= 1 && value >= 0.0, "LambdaSequence::constant: k >= 1, value >= 0");
    return LambdaSequence(Vector::Constant(k, value));
}

LambdaSequence LambdaSequence::zero(Eigen::Index k) { return constant(k, 0.0); }

LambdaSequence LambdaSequence::scaled(double t) const {
    require(t >= 0.0, "LambdaSequence::scaled: negative factor");
    return LambdaSequence(values_ * t);
}

double sorted_l1_norm(const Vector& w, const LambdaSequence& lambda) {
    require(w.size() == lambda.size(), "sorted_l1_norm: dimension mismatch");
    std::vector<double> abs(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) abs[static_cast<std::size_t>(i)] = std::abs(w[i]);
    std::sort(abs.begin(), abs.end(), std::greater<double>());
    double total = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i)
        total += lambda[i] * abs[static_cast<std::size_t>(i)];
    return total;
}

Vector prox_sorted_l1(const Vector& y, const LambdaSequence& lambda) {
    const Eigen::Index k = y.size();
    require(k == lambda.size(), "prox_sorted_l1: dimension mismatch");

    // Stable sort of |y| descending; ties keep original index order.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return std::abs(y[a]) > std::abs(y[b]); });

    // Pool adjacent violators on s_i = |y|_(i) - lambda_i.
    std::vector<double> block_sum(static_cast<std::size_t>(k));
    std::vector<double> block_avg(static_cast<std::size_t>(k));
    std::vector<Eigen::Index> block_first(static_cast<std::size_t>(k));
    std::vector<Eigen::Index> block_last(static_cast<std::size_t>(k));

    std::size_t top = 0;
    for (Eigen::Index i = 0; i < k; ++i) {
        block_first[top] = i;
        block_last[top] = i;
        block_sum[top] = std::abs(y[order[static_cast<std::size_t>(i)]]) - lambda[i];
        block_avg[top] = block_sum[top];
        ++top;
        while (top > 1 && block_avg[top - 2] <= block_avg[top - 1]) {
            block_sum[top - 2] += block_sum[top - 1];
            block_last[top - 2] = block_last[top - 1];
            block_avg[top - 2] =
                block_sum[top - 2] /
                static_cast<double>(block_last[top - 2] - block_first[top - 2] + 1);
            --top;
        }
    }

    Vector out(k);
    for (std::size_t b = 0; b < top; ++b) {
        const double value = std::max(0.0, block_avg[b]);
        for (Eigen::Index i = block_first[b]; i <= block_last[b]; ++i) {
            const Eigen::Index j = order[static_cast<std::size_t>(i)];
            out[j] = (y[j] < 0.0) ? -value : value;
        }
    }
    return out;
}

Vector prox_sorted_l1_nonneg(const Vector& y, const LambdaSequence& lambda) {
    return prox_sorted_l1(y.cwiseMax(0.0), lambda);
}

double dual_sorted_l1_norm(const Vector& a, const LambdaSequence& lambda) {
    require(a.size() == lambda.size(), "dual_sorted_l1_norm: dimension mismatch");
    require(lambda.front() > 0.0, "dual_sorted_l1_norm: all-zero lambda");
    std::vector<double> abs(a.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) abs[static_cast<std::size_t>(i)] = std::abs(a[i]);
    std::sort(abs.begin(), abs.end(), std::greater<double>());
    double best = 0.0;
    double num = 0.0;
    double den = 0.0;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        num += abs[static_cast<std::size_t>(j)];
        den += lambda[j];
        if (den > 0.0) best = std::max(best, num / den);
    }
    return best;
}

LambdaSequence bh_lambda_sequence(Eigen::Index k, double q, double scale) {
    require(k >= 1, "bh_lambda_sequence: k >= 1");
    require(q > 0.0 && q < 1.0, "bh_lambda_sequence: q in (0,1)");
    require(scale >= 0.0, "bh_lambda_sequence: scale >= 0");
    Vector values(k);
    for (Eigen::Index i = 1; i <= k; ++i) {
        const double p = 1.0 - static_cast<double>(i) * q / (2.0 * static_cast<double>(k));
        require(p > 0.0 && p < 1.0, "bh_lambda_sequence: quantile argument outside (0,1)");
        values[i - 1] = scale * normal_quantile(p);
    }
    return LambdaSequence(std::move(values));
}

Vector log_grid(double lo, double hi, Eigen::Index n) {
    require(lo > 0.0 && hi > lo, "log_grid: need 0 < lo < hi");
    require(n >= 2, "log_grid: need n >= 2");
    Vector grid(n);
    const double llo = std::log(lo);
    const double lhi = std::log(hi);
    for (Eigen::Index i = 0; i < n; ++i)
        grid[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) / static_cast<double>(n - 1));
    grid[0] = lo;
    grid[n - 1] = hi;
    return grid;
}

}  // namespace pfopt
