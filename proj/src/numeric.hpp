#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace stochord::detail {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Past this cumulative hazard exp(-H) is below the smallest subnormal.
inline constexpr double kMaxCumulativeHazard = 745.0;

inline double sf_from_cumulative_hazard(double h) {
  return h > kMaxCumulativeHazard ? 0.0 : std::exp(-h);
}

inline double cdf_from_cumulative_hazard(double h) { return -std::expm1(-h); }

/// log(1 - exp(-h)) for h >= 0, accurate at both ends.
inline double log1mexp(double h) {
  if (h <= 0.0) return -kInf;
  return h < M_LN2 ? std::log(-std::expm1(-h)) : std::log1p(-std::exp(-h));
}

/// log(exp(t) - 1) for t >= 0.
inline double log_expm1(double t) {
  if (t <= 0.0) return -kInf;
  return t > 30.0 ? t + std::log1p(-std::exp(-t)) : std::log(std::expm1(t));
}

/// Neumaier-compensated sum of the values in ascending order, so any
/// permutation of the same multiset yields the identical double.
inline double ordered_sum(std::span<const double> values) {
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  double sum = 0.0;
  double c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    c += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + c;
}

}  // namespace stochord::detail
