#ifndef RIESZLAB_REARRANGE_HPP
#define RIESZLAB_REARRANGE_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "rieszlab/assemble.hpp"
#include "rieszlab/domain.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/kernel.hpp"

namespace rieszlab {

/// Values aligned with the domain's lexicographic cell ordering.
struct GridFunction {
  std::shared_ptr<const GridDomain> domain;
  Eigen::VectorXd values;
};

namespace detail {

// Ordering key for "nearest to origin": 4 |center|^2 / h^2 = sum (2k+1)^2,
// an exact integer; ties resolved lexicographically.
inline std::int64_t radial_key(const CellIndex& k, int dim) {
  std::int64_t key = 0;
  for (int a = 0; a < dim; ++a) {
    const std::int64_t t = 2 * k[a] + 1;
    key += t * t;
  }
  return key;
}

/// The n lattice cells nearest to the origin (distance, then lexicographic),
/// in that assignment order.
inline std::vector<CellIndex> nearest_to_origin_cells(std::size_t n, int dim) {
  // radius guess from cell count, grown until the candidate ball suffices
  std::int64_t m = 1;
  while (true) {
    const double radius = static_cast<double>(m) - 0.5;
    const double volume = unit_ball_volume(dim) * std::pow(radius, dim);
    if (volume >= static_cast<double>(n) + 1.0 || m > (1 << 20)) break;
    ++m;
  }
  std::vector<CellIndex> candidates;
  CellIndex k{};
  std::array<std::int64_t, kMaxDim> cur{};
  for (int a = 0; a < dim; ++a) cur[a] = -m - 1;
  while (true) {
    for (int a = 0; a < dim; ++a) k[a] = cur[a];
    candidates.push_back(k);
    int axis = dim - 1;
    while (axis >= 0 && ++cur[axis] > m) {
      cur[axis] = -m - 1;
      --axis;
    }
    if (axis < 0) break;
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [dim](const CellIndex& a, const CellIndex& b) {
                     const auto ka = radial_key(a, dim);
                     const auto kb = radial_key(b, dim);
                     if (ka != kb) return ka < kb;
                     return a < b;
                   });
  if (candidates.size() < n) {
    throw CapacityError("nearest_to_origin_cells: candidate ball too small");
  }
  candidates.resize(n);
  return candidates;
}

}  // namespace detail

/// Symmetric-decreasing rearrangement: the value multiset is reassigned,
/// sorted descending, onto the n lattice cells nearest the origin (same h,
/// same cell count), from the center outward. Exactly norm-preserving.
inline GridFunction rearrange_function(const GridFunction& f) {
  const GridDomain& dom = *f.domain;
  const std::size_t n = dom.cell_count();
  for (Eigen::Index i = 0; i < f.values.size(); ++i) {
    if (!(f.values(i) >= 0.0)) {
      throw DomainError("rearrange_function: values must be nonnegative");
    }
  }
  if (static_cast<std::size_t>(f.values.size()) != n) {
    throw DataError("rearrange_function: value/cell count mismatch");
  }

  std::vector<CellIndex> target = detail::nearest_to_origin_cells(n, dom.dim());

  std::vector<double> sorted(f.values.data(), f.values.data() + n);
  std::stable_sort(sorted.begin(), sorted.end(), std::greater<double>());

  // target[i] receives sorted[i]; the domain itself keeps lexicographic order
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return target[a] < target[b];
  });

  std::vector<CellIndex> lex_cells(n);
  Eigen::VectorXd values(n);
  for (std::size_t lex_pos = 0; lex_pos < n; ++lex_pos) {
    lex_cells[lex_pos] = target[perm[lex_pos]];
    values(static_cast<Eigen::Index>(lex_pos)) = sorted[perm[lex_pos]];
  }

  BoundingBox box;
  for (int a = 0; a < dom.dim(); ++a) {
    std::int64_t lo = lex_cells.front()[a], hi = lo;
    for (const auto& c : lex_cells) {
      lo = std::min(lo, c[a]);
      hi = std::max(hi, c[a]);
    }
    box.corner[a] = dom.h() * static_cast<double>(lo - 1);
    box.sides[a] = dom.h() * static_cast<double>(hi - lo + 3);
  }
  auto ball_domain = std::make_shared<GridDomain>(dom.dim(), dom.h(),
                                                  std::move(lex_cells), box);
  return GridFunction{std::move(ball_domain), std::move(values)};
}

/// Discrete double integral of f against the kernel over the function's
/// domain: v^T A v with the self-term diagonal.
inline double quadratic_form(const OperatorMatrix& matrix,
                             const Eigen::VectorXd& values) {
  if (matrix.entries.rows() != values.size()) {
    throw DataError("quadratic_form: size mismatch");
  }
  return values.dot(matrix.entries.selfadjointView<Eigen::Lower>() * values);
}

inline double quadratic_form(const RieszParams& params, const GridFunction& f,
                             const AssembleOptions& options = {}) {
  return quadratic_form(assemble(params, *f.domain, options), f.values);
}

/// Discrete surrogate of the Riesz rearrangement inequality.
struct RearrangementReport {
  double q = 0.0;       // quadratic form of f
  double q_star = 0.0;  // quadratic form of the rearranged function
  double gap = 0.0;     // q_star - q
  double tolerance = 0.0;
  bool pass = false;    // q_star >= q - tolerance
};

inline RearrangementReport riesz_rearrangement_check(
    const RieszParams& params, const GridFunction& f,
    const AssembleOptions& options = {}) {
  RearrangementReport report;
  const GridFunction star = rearrange_function(f);
  report.q = quadratic_form(params, f, options);
  report.q_star = quadratic_form(params, star, options);
  report.gap = report.q_star - report.q;
  report.tolerance = 1e-9 * std::max(std::abs(report.q), std::abs(report.q_star));
  report.pass = report.q_star >= report.q - report.tolerance;
  return report;
}

}  // namespace rieszlab

#endif  // RIESZLAB_REARRANGE_HPP
