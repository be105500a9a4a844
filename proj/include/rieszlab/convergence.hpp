#ifndef RIESZLAB_CONVERGENCE_HPP
#define RIESZLAB_CONVERGENCE_HPP

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "rieszlab/errors.hpp"

namespace rieszlab {

/// Empirical-order fit and Richardson extrapolation over a geometric h
/// progression (coarse to fine).
struct ConvergenceFit {
  double fitted_order = std::numeric_limits<double>::quiet_NaN();
  double extrapolated = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> successive_diffs;   // values[i+1] - values[i]
  std::vector<double> error_estimates;    // |values[i] - extrapolated|
  bool monotone_diffs = false;            // |diffs| strictly decreasing
};

/// Fit q from the last three points of a model value(h) = limit + C h^q and
/// extrapolate; h must be strictly descending in geometric progression.
inline ConvergenceFit richardson_fit(const std::vector<double>& h,
                                     const std::vector<double>& values) {
  if (h.size() < 3 || h.size() != values.size()) {
    throw ConfigError("richardson_fit: need >= 3 (h, value) pairs");
  }
  const double ratio = h[0] / h[1];
  for (std::size_t i = 0; i + 1 < h.size(); ++i) {
    if (!(h[i] > h[i + 1]) || !(h[i + 1] > 0.0)) {
      throw ConfigError("richardson_fit: h must be positive and descending");
    }
    if (std::abs(h[i] / h[i + 1] - ratio) > 1e-6 * ratio) {
      throw ConfigError("richardson_fit: h progression is not geometric");
    }
  }
  ConvergenceFit fit;
  fit.successive_diffs.reserve(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    fit.successive_diffs.push_back(values[i + 1] - values[i]);
  }
  fit.monotone_diffs = true;
  for (std::size_t i = 0; i + 1 < fit.successive_diffs.size(); ++i) {
    if (!(std::abs(fit.successive_diffs[i + 1]) <
          std::abs(fit.successive_diffs[i]))) {
      fit.monotone_diffs = false;
    }
  }
  const std::size_t m = values.size();
  const double d1 = values[m - 2] - values[m - 3];
  const double d2 = values[m - 1] - values[m - 2];
  if (d1 * d2 > 0.0 && std::abs(d2) < std::abs(d1)) {
    fit.fitted_order = std::log(std::abs(d1) / std::abs(d2)) / std::log(ratio);
    const double factor = std::pow(ratio, fit.fitted_order) - 1.0;
    fit.extrapolated = values[m - 1] + d2 / factor;
    fit.error_estimates.reserve(m);
    for (double v : values) {
      fit.error_estimates.push_back(std::abs(v - fit.extrapolated));
    }
  }
  return fit;
}

}  // namespace rieszlab

#endif  // RIESZLAB_CONVERGENCE_HPP
