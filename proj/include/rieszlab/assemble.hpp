#ifndef RIESZLAB_ASSEMBLE_HPP
#define RIESZLAB_ASSEMBLE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "rieszlab/domain.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/kernel.hpp"
#include "rieszlab/special.hpp"

namespace rieszlab {

/// Identity of the grid a matrix was assembled on.
struct DomainRef {
  double h = 0.0;
  std::size_t cell_count = 0;
  std::uint64_t hash = 0;
};

/// Dense symmetric Nystrom discretization of the Riesz potential; entries in
/// units length^alpha. Symmetry is exact by construction and the diagonal is
/// the translation-invariant self term.
struct OperatorMatrix {
  Eigen::MatrixXd entries;
  RieszParams params;
  DomainRef domain_ref;

  std::size_t size() const { return static_cast<std::size_t>(entries.rows()); }
};

/// Equal-volume-ball regularization of the diagonal: the kernel integrated
/// over the ball of the cell's volume centered at the collocation node,
///   c ω_{d-1} ρ^α / α,  ρ = (h^d / v_d)^{1/d}.
/// Exact for the cell itself in d = 1.
inline double self_term(const RieszParams& params, double h) {
  if (!(h > 0.0)) throw DomainError("self_term: h must be > 0");
  const int d = params.dim();
  const double rho = std::pow(std::pow(h, d) / unit_ball_volume(d), 1.0 / d);
  return params.constant() * unit_sphere_area(d) *
         std::pow(rho, params.alpha()) / params.alpha();
}

/// Refined diagonal for sensitivity checks: the cell is split into 4^d
/// sub-cells and the equal-volume-ball rule is applied per sub-cell against
/// the parent center (one refinement level).
inline double self_term_subdivided(const RieszParams& params, double h) {
  if (!(h > 0.0)) throw DomainError("self_term_subdivided: h must be > 0");
  const int d = params.dim();
  const double hs = 0.25 * h;
  const double hd = std::pow(hs, d);
  double total = 0.0;
  std::array<int, kMaxDim> idx{};
  while (true) {
    Point offset{};
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) {
      offset[a] = (idx[a] + 0.5) * hs - 0.5 * h;
      r2 += offset[a] * offset[a];
    }
    const double r = std::sqrt(r2);
    if (r == 0.0) {
      total += self_term(params, hs);
    } else {
      total += kernel_eval(params, r) * hd;
    }
    int axis = d - 1;
    while (axis >= 0 && ++idx[axis] >= 4) {
      idx[axis] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return total;
}

struct AssembleOptions {
  std::size_t size_guard = 20000;  // dense allocation limit
  bool subdivided_diagonal = false;
  unsigned threads = 1;
};

/// Nystrom/collocation matrix: entries[i][j] = kernel(|x_i - x_j|) h^d off
/// the diagonal, self term on it. Each unordered pair is computed once, so
/// symmetry is bit-exact; rows are distributed over threads without changing
/// any entry (every entry is a pure function of (i, j)).
inline OperatorMatrix assemble(const RieszParams& params,
                               const GridDomain& domain,
                               const AssembleOptions& options = {}) {
  if (params.dim() != domain.dim()) {
    throw DomainError("assemble: params.dim = " + std::to_string(params.dim()) +
                      " != domain.dim = " + std::to_string(domain.dim()));
  }
  const std::size_t n = domain.cell_count();
  if (n > options.size_guard) {
    throw CapacityError("assemble: " + std::to_string(n) +
                        " cells exceed the dense size guard of " +
                        std::to_string(options.size_guard));
  }
  const int d = domain.dim();
  const double h = domain.h();
  const double weight = std::pow(h, d);
  const double diag = options.subdivided_diagonal
                          ? self_term_subdivided(params, h)
                          : self_term(params, h);
  const double exponent = params.alpha() - static_cast<double>(d);
  const double c = params.constant();

  std::vector<Point> centers(n);
  for (std::size_t i = 0; i < n; ++i) centers[i] = domain.cell_center(i);

  OperatorMatrix mat{Eigen::MatrixXd(n, n), params,
                     DomainRef{h, n, domain.content_hash()}};
  auto fill_rows = [&](std::size_t row_begin, std::size_t row_end) {
    for (std::size_t i = row_begin; i < row_end; ++i) {
      mat.entries(i, i) = diag;
      for (std::size_t j = i + 1; j < n; ++j) {
        double r2 = 0.0;
        for (int a = 0; a < d; ++a) {
          const double dx = centers[i][a] - centers[j][a];
          r2 += dx * dx;
        }
        const double value = c * std::pow(std::sqrt(r2), exponent) * weight;
        mat.entries(i, j) = value;
        mat.entries(j, i) = value;
      }
    }
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(options.threads,
                                      static_cast<unsigned>(n)));
  if (workers == 1) {
    fill_rows(0, n);
  } else {
    // interleave rows cheaply by splitting into contiguous blocks of
    // decreasing size (upper-triangle rows shrink toward the bottom)
    std::vector<std::thread> pool;
    std::vector<std::size_t> cuts(workers + 1, 0);
    for (unsigned w = 0; w <= workers; ++w) {
      const double f = static_cast<double>(w) / workers;
      cuts[w] = static_cast<std::size_t>(
          std::llround(n * (1.0 - std::sqrt(1.0 - f * (1.0 - 1e-12)))));
    }
    cuts[workers] = n;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(fill_rows, cuts[w], cuts[w + 1]);
    }
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!std::isfinite(mat.entries(i, j))) {
        throw DataError("assemble: non-finite entry at (" + std::to_string(i) +
                        ", " + std::to_string(j) + ")");
      }
    }
  }
  return mat;
}

}  // namespace rieszlab

#endif  // RIESZLAB_ASSEMBLE_HPP
