#ifndef RIESZLAB_QUADRATURE_HPP
#define RIESZLAB_QUADRATURE_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "rieszlab/errors.hpp"

namespace rieszlab {

struct QuadRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

/// Gauss-Legendre rule with n nodes, by Newton iteration on P_n.
inline QuadRule gauss_legendre(int n) {
  if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
  QuadRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[n - 1 - i] = rule.weights[i];
  }
  return rule;
}

/// Integrate f over [a, b] with the given rule.
template <class F>
double integrate_panel(const QuadRule& rule, double a, double b, F&& f) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return sum * half;
}

/// Composite integration over [a, b] with panels geometrically graded toward
/// the endpoint `a` (ratio 2 per octave down to width_floor), then uniform.
/// Suited to integrands with a fractional-power bend at `a`.
template <class F>
double integrate_graded(const QuadRule& rule, double a, double b,
                        double width_floor, F&& f) {
  if (!(b > a)) return 0.0;
  const double len = b - a;
  double sum = 0.0;
  // uniform panels on the smooth right half, octaves toward a on the left
  double right = a + len;
  double left = a + 0.5 * len;
  while (right - a > width_floor && left > a) {
    sum += integrate_panel(rule, left, right, f);
    right = left;
    left = a + 0.5 * (left - a);
  }
  // closing panel down to a (integrand must be finite there)
  if (right > a) sum += integrate_panel(rule, a, right, f);
  return sum;
}

}  // namespace rieszlab

#endif  // RIESZLAB_QUADRATURE_HPP
