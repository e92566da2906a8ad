#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace pfopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// T x k panel of per-period asset returns with date and ticker labels.
/// Panels are fully observed; ingestion (tools/) drops or rejects columns
/// with missing cells before constructing one.
struct ReturnsMatrix {
    Matrix values;                     // T x k, fractional returns per period
    std::vector<std::string> dates;    // T labels, strictly increasing
    std::vector<std::string> tickers;  // k labels

    Eigen::Index periods() const { return values.rows(); }
    Eigen::Index assets() const { return values.cols(); }

    void validate() const;

    /// Rows [first, first+count) as a window slice; labels carried over.
    ReturnsMatrix window(Eigen::Index first, Eigen::Index count) const;
};

enum class CovMethod { Sample, Shrinkage, TrueModel };

/// k x k covariance matrix tagged with how it was produced.
struct CovarianceEstimate {
    Matrix matrix;
    CovMethod method = CovMethod::Sample;

    Eigen::Index size() const { return matrix.rows(); }
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace pfopt
