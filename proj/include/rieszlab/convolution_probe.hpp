#ifndef RIESZLAB_CONVOLUTION_PROBE_HPP
#define RIESZLAB_CONVOLUTION_PROBE_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rieszlab/errors.hpp"
#include "rieszlab/kernel.hpp"
#include "rieszlab/quadrature.hpp"

namespace rieszlab {

struct ProbeSample {
  double r;          // separation |x - y|
  double ratio;      // integral / kernel_{a1+a2}(r)
  double tolerance;  // relative error budget: quadrature estimate + tail bound
};

namespace detail {

// One half-plane contribution in d = 1, poles at x = -r/2 and y = +r/2.
// Polar (here: signed-offset) coordinates around the pole at -r/2 with the
// radial power law integrated exactly via u = t^a; the other kernel factor
// is smooth on this half (distance to the far pole >= r/2).
template <class Rule>
double half_line_integral(const Rule& rule, double a, double ca, double b,
                          double cb, double r, double R) {
  const auto smooth = [&](double t) {
    // kernel factor around the far pole, t measured from the near pole
    return cb * std::pow(std::abs(t - r), b - 1.0);
  };
  const double inner_top = std::pow(0.5 * r, a);
  const double outer_top = std::pow(R - 0.5 * r, a);
  const double floor_in = inner_top * 1e-14;
  const double floor_out = outer_top * 1e-14;
  const double inner = integrate_graded(
      rule, 0.0, inner_top, floor_in,
      [&](double u) { return smooth(std::pow(u, 1.0 / a)); });
  const double outer = integrate_graded(
      rule, 0.0, outer_top, floor_out,
      [&](double u) { return smooth(-std::pow(u, 1.0 / a)); });
  return (ca / a) * (inner + outer);
}

// One half-disk contribution in d = 2. Polar coordinates around the pole at
// (-r/2, 0); the region {|z| < R, z1 < 0} is star-shaped about it with
//   rho_max(phi) = (r/2)/cos(phi)   for |phi| < phi* (bisector chord),
//   rho_max(phi) = circle crossing  otherwise,
// split at the corner angle phi* = atan2(R, r/2).
template <class Rule>
double half_disk_integral(const Rule& rule, double a, double ca, double b,
                          double cb, double r, double R, int ang_panels) {
  const auto smooth = [&](double rho, double cphi, double sphi) {
    // distance from z = x + rho e(phi) to y = (r/2, 0)
    const double dx = rho * cphi - r;
    const double dy = rho * sphi;
    return cb * std::pow(std::hypot(dx, dy), b - 2.0);
  };
  const auto radial = [&](double phi) {
    const double cphi = std::cos(phi);
    const double sphi = std::sin(phi);
    const double rho_circ =
        0.5 * (r * cphi + std::sqrt(r * r * cphi * cphi + 4.0 * R * R - r * r));
    double rho_max = rho_circ;
    if (cphi > 0.0) rho_max = std::min(rho_max, 0.5 * r / cphi);
    const double top = std::pow(rho_max, a);
    return integrate_graded(rule, 0.0, top, top * 1e-14, [&](double u) {
      return smooth(std::pow(u, 1.0 / a), cphi, sphi);
    });
  };
  const double phi_star = std::atan2(R, 0.5 * r);
  double sum = 0.0;
  for (const auto& [lo, hi] : {std::pair{0.0, phi_star}, {phi_star, M_PI}}) {
    const double width = (hi - lo) / ang_panels;
    for (int k = 0; k < ang_panels; ++k) {
      sum += integrate_panel(rule, lo + k * width, lo + (k + 1) * width, radial);
    }
  }
  // factor 2: z2 -> -z2 symmetry; ca/a: exact radial power-law substitution
  return 2.0 * (ca / a) * sum;
}

template <class Rule>
double truncated_convolution(const Rule& rule, int dim, double a1, double c1,
                             double a2, double c2, double r, double R,
                             int ang_panels) {
  if (dim == 1) {
    return half_line_integral(rule, a1, c1, a2, c2, r, R) +
           half_line_integral(rule, a2, c2, a1, c1, r, R);
  }
  return half_disk_integral(rule, a1, c1, a2, c2, r, R, ang_panels) +
         half_disk_integral(rule, a2, c2, a1, c1, r, R, ang_panels);
}

inline double tail_bound(int dim, double a1, double c1, double a2, double c2,
                         double r, double R) {
  const double s = a1 + a2;
  const double kappa = std::pow(1.0 - 0.5 * r / R, s - 2.0 * dim);
  if (dim == 1) return kappa * c1 * c2 * 2.0 * std::pow(R, s - 1.0) / (1.0 - s);
  return kappa * c1 * c2 * 2.0 * M_PI * std::pow(R, s - 2.0) / (2.0 - s);
}

}  // namespace detail

/// Numerically evaluates the truncated kernel composition
///   integral_{|z|<R} eps_{a1,d}(|x-z|) eps_{a2,d}(|z-y|) dz,  |x-y| = r,
/// and reports its ratio to eps_{a1+a2,d}(r). Homogeneity makes the exact
/// ratio a constant independent of r; the per-sample tolerance combines a
/// two-level quadrature difference with an analytic tail bound for |z| > R.
/// Supports d = 1 and d = 2.
inline std::vector<ProbeSample> convolution_ratio_probe(
    double alpha1, double alpha2, int dim, const std::vector<double>& r_values,
    double truncation_radius, int quad_points = 16) {
  if (dim != 1 && dim != 2) {
    throw UnsupportedError("convolution_ratio_probe: dim = " +
                           std::to_string(dim) + " not supported (1 or 2)");
  }
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) {
    throw DomainError("convolution_ratio_probe: orders must be positive");
  }
  if (!(alpha1 + alpha2 < static_cast<double>(dim))) {
    throw DivergenceError(
        "convolution_ratio_probe: alpha1 + alpha2 = " +
        std::to_string(alpha1 + alpha2) + " >= d = " + std::to_string(dim) +
        "; the composition integral diverges");
  }
  if (r_values.empty()) throw DomainError("convolution_ratio_probe: empty r grid");
  double r_max = 0.0;
  for (double r : r_values) {
    if (!(r > 0.0)) throw DomainError("convolution_ratio_probe: r values must be > 0");
    r_max = std::max(r_max, r);
  }
  if (!(truncation_radius >= 16.0 * r_max)) {
    throw DomainError("convolution_ratio_probe: truncation_radius must be >= 16 * max(r)");
  }
  if (quad_points < 4) quad_points = 4;

  const double c1 = riesz_constant(alpha1, dim);
  const double c2 = riesz_constant(alpha2, dim);
  const RieszParams sum_params(alpha1 + alpha2, dim);
  const auto coarse = gauss_legendre(quad_points);
  const auto fine = gauss_legendre(quad_points + 6);
  const int ang_coarse = 2 * quad_points;
  const int ang_fine = 3 * quad_points;

  std::vector<ProbeSample> out;
  out.reserve(r_values.size());
  for (double r : r_values) {
    const double R = truncation_radius;
    const double v_fine = detail::truncated_convolution(fine, dim, alpha1, c1,
                                                        alpha2, c2, r, R, ang_fine);
    const double v_coarse = detail::truncated_convolution(
        coarse, dim, alpha1, c1, alpha2, c2, r, R, ang_coarse);
    const double denom = kernel_eval(sum_params, r);
    const double quad_err = std::abs(v_fine - v_coarse);
    const double tail = detail::tail_bound(dim, alpha1, c1, alpha2, c2, r, R);
    out.push_back({r, v_fine / denom, (quad_err + tail) / denom});
  }
  return out;
}

}  // namespace rieszlab

#endif  // RIESZLAB_CONVOLUTION_PROBE_HPP
