#pragma once

#include <cstddef>
#include <vector>

namespace pfopt {

/// Inverse standard-normal CDF, Wichura's AS 241 (PPND16) rational
/// approximation. Absolute error below 1e-15 on (0,1); throws outside.
double normal_quantile(double p);

/// Type-7 sample quantile (linear interpolation between order statistics).
/// q in [0,1]; data need not be sorted.
double quantile_type7(std::vector<double> data, double q);

double mean_of(const std::vector<double>& data);
double median_of(std::vector<double> data);

}  // namespace pfopt
