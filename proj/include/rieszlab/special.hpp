#ifndef RIESZLAB_SPECIAL_HPP
#define RIESZLAB_SPECIAL_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "rieszlab/errors.hpp"

namespace rieszlab {

/// Gamma function on (0, 30), the range needed by kernel constants.
/// std::tgamma is correctly rounded to a few ulp here, well inside the
/// 1e-12 relative budget; the range check keeps callers honest.
inline double gamma_fn(double x) {
  if (!(x > 0.0 && x < 30.0)) {
    throw DomainError("gamma_fn: argument " + std::to_string(x) +
                      " outside supported range (0, 30)");
  }
  return std::tgamma(x);
}

/// Volume of the unit ball in R^d: v_d = pi^{d/2} / Gamma(d/2 + 1).
inline double unit_ball_volume(int dim) {
  if (dim < 1) throw DomainError("unit_ball_volume: dim must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * dim) / gamma_fn(0.5 * dim + 1.0);
}

/// Surface area of the unit sphere S^{d-1}: omega_{d-1} = 2 pi^{d/2} / Gamma(d/2).
inline double unit_sphere_area(int dim) {
  if (dim < 1) throw DomainError("unit_sphere_area: dim must be >= 1");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / gamma_fn(0.5 * dim);
}

}  // namespace rieszlab

#endif  // RIESZLAB_SPECIAL_HPP
