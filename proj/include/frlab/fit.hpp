#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "frlab/errors.hpp"

namespace frlab {

/// Least-squares slope of y against x.
inline double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ContractError("slope fit: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) mx += x[i], my += y[i];
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

/// Fitted exponent p of values ~ dims^p on a log-log scale. Non-positive
/// values make the fit meaningless; +inf is returned if any value is
/// infinite, -inf if any value is zero or negative.
inline double growth_exponent(std::span<const double> dims, std::span<const double> values) {
  std::vector<double> lx, ly;
  lx.reserve(dims.size());
  ly.reserve(dims.size());
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (std::isinf(values[i])) return std::numeric_limits<double>::infinity();
    if (!(values[i] > 0.0)) return -std::numeric_limits<double>::infinity();
    lx.push_back(std::log(dims[i]));
    ly.push_back(std::log(values[i]));
  }
  return least_squares_slope(lx, ly);
}

/// Log-log slope between the last two points only. Suits monotone partial
/// sums, where early terms dominate a full fit.
inline double tail_growth_exponent(std::span<const double> dims, std::span<const double> values) {
  const std::size_t n = dims.size();
  if (n < 2) return 0.0;
  return growth_exponent(dims.subspan(n - 2), values.subspan(n - 2));
}

inline std::vector<double> as_doubles(std::span<const std::size_t> v) {
  return std::vector<double>(v.begin(), v.end());
}

}  // namespace frlab
