#ifndef RIESZLAB_KERNEL_HPP
#define RIESZLAB_KERNEL_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "rieszlab/errors.hpp"
#include "rieszlab/special.hpp"

namespace rieszlab {

/// Normalizing constant of the Riesz kernel,
///   c_{alpha,d} = 2^{alpha-d} pi^{-d/2} Gamma(alpha/2) / Gamma((d-alpha)/2),
/// valid for 0 < alpha < d.
inline double riesz_constant(double alpha, int dim) {
  if (!(alpha > 0.0)) {
    throw DomainError("riesz_constant: alpha = " + std::to_string(alpha) +
                      " violates alpha > 0");
  }
  if (!(alpha < static_cast<double>(dim))) {
    throw DomainError("riesz_constant: alpha = " + std::to_string(alpha) +
                      " violates alpha < d = " + std::to_string(dim));
  }
  const double d = static_cast<double>(dim);
  return std::pow(2.0, alpha - d) * std::pow(std::numbers::pi, -0.5 * d) *
         gamma_fn(0.5 * alpha) / gamma_fn(0.5 * (d - alpha));
}

/// Order alpha, ambient dimension d and the kernel constant c_{alpha,d}.
/// Immutable; governs every kernel evaluation downstream.
class RieszParams {
 public:
  RieszParams(double alpha, int dim)
      : alpha_(alpha), dim_(dim), c_(riesz_constant(alpha, dim)) {}

  /// Same validity checks, but with an explicit constant (e.g. c = 1 for
  /// convention-independent experiments).
  static RieszParams with_constant(double alpha, int dim, double c) {
    RieszParams p(alpha, dim);
    if (!(c > 0.0)) throw DomainError("RieszParams: constant must be > 0");
    p.c_ = c;
    return p;
  }

  double alpha() const { return alpha_; }
  int dim() const { return dim_; }
  double constant() const { return c_; }

  /// Schatten membership threshold p0 = d / alpha.
  double p0() const { return static_cast<double>(dim_) / alpha_; }
  /// Decay exponent theta = alpha / d.
  double theta() const { return alpha_ / static_cast<double>(dim_); }

 private:
  double alpha_;
  int dim_;
  double c_;
};

/// Riesz kernel at separation r > 0: c_{alpha,d} r^{alpha-d}.
inline double kernel_eval(const RieszParams& params, double r) {
  if (!(r > 0.0)) {
    throw SingularityError("kernel_eval: r = " + std::to_string(r) +
                           " <= 0; the kernel diverges at r = 0 "
                           "(use the self-term rule for coincident nodes)");
  }
  return params.constant() *
         std::pow(r, params.alpha() - static_cast<double>(params.dim()));
}

/// Polyharmonic Newton potential parameters: alpha = 2m, requires 0 < m < d/2.
inline RieszParams newton_params(int m, int dim) {
  if (m < 1) throw DomainError("newton_params: m must be >= 1");
  if (2 * m >= dim) {
    throw DomainError("newton_params: 2m = " + std::to_string(2 * m) +
                      " violates 2m < d = " + std::to_string(dim));
  }
  return RieszParams(2.0 * m, dim);
}

}  // namespace rieszlab

#endif  // RIESZLAB_KERNEL_HPP
