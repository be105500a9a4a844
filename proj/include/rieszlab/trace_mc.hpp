#ifndef RIESZLAB_TRACE_MC_HPP
#define RIESZLAB_TRACE_MC_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "rieszlab/domain.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/kernel.hpp"
#include "rieszlab/rng.hpp"

namespace rieszlab {

/// Monte Carlo estimate of the s-fold cyclic trace integral over Omega^s.
struct TraceMCEstimate {
  int s = 0;
  double estimate = 0.0;   // units length^{alpha s}
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  unsigned lanes = 1;
  std::uint64_t rejections = 0;  // redrawn cycles with coincident points
  std::uint64_t domain_hash = 0;
};

/// Uniform draw over the union of cells: one draw picks the cell, then one
/// draw per coordinate places the point inside it (in that documented order).
inline Point sample_point(const GridDomain& domain, RandomStream& rng) {
  const std::size_t n = domain.cell_count();
  auto cell = static_cast<std::size_t>(rng.uniform01() * static_cast<double>(n));
  if (cell >= n) cell = n - 1;
  Point p = domain.cell_center(cell);
  const double h = domain.h();
  for (int a = 0; a < domain.dim(); ++a) {
    p[a] += (rng.uniform01() - 0.5) * h;
  }
  return p;
}

struct TraceMCOptions {
  unsigned lanes = 1;  // partial sums combined in lane order
};

/// Plain iid estimator of Tr(R^s) = integral over Omega^s of the cyclic
/// kernel product, valid for integer s > p0 = d/alpha:
///   measure^s * mean over cycles of prod_k eps(|x_k - x_{k+1}|),
/// products accumulated in log space. Cycles with coincident consecutive
/// points are redrawn and counted. Bit-reproducible for fixed
/// (seed, domain, params, s, n, lanes).
inline TraceMCEstimate trace_cycle_mc(const RieszParams& params,
                                      const GridDomain& domain, int s,
                                      std::size_t n_samples, std::uint64_t seed,
                                      const TraceMCOptions& options = {}) {
  if (s < 2) throw DomainError("trace_cycle_mc: s must be an integer >= 2");
  if (!(static_cast<double>(s) > params.p0())) {
    throw DivergenceError("trace_cycle_mc: s = " + std::to_string(s) +
                          " must exceed p0 = d/alpha = " +
                          std::to_string(params.p0()) +
                          "; the trace integral diverges otherwise");
  }
  if (n_samples < 1000) {
    throw DomainError("trace_cycle_mc: n_samples must be >= 1000");
  }
  if (params.dim() != domain.dim()) {
    throw DomainError("trace_cycle_mc: params/domain dimension mismatch");
  }
  const unsigned lanes = std::max(1u, options.lanes);
  const double log_c = std::log(params.constant());
  const double exponent = params.alpha() - static_cast<double>(params.dim());
  const int d = domain.dim();

  struct LaneResult {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::uint64_t rejections = 0;
  };
  std::vector<LaneResult> lane_results(lanes);

  auto run_lane = [&](unsigned lane, std::size_t count) {
    RandomStream rng(derive_seed(seed, lane));
    LaneResult& out = lane_results[lane];
    std::vector<Point> cycle(static_cast<std::size_t>(s));
    for (std::size_t i = 0; i < count; ++i) {
      double log_product;
      while (true) {
        for (int k = 0; k < s; ++k) cycle[k] = sample_point(domain, rng);
        log_product = 0.0;
        bool coincident = false;
        for (int k = 0; k < s; ++k) {
          const Point& a = cycle[k];
          const Point& b = cycle[(k + 1) % s];
          const double r = distance(a, b, d);
          if (r == 0.0) {
            coincident = true;
            break;
          }
          log_product += log_c + exponent * std::log(r);
        }
        if (!coincident) break;
        ++out.rejections;
      }
      const double product = std::exp(log_product);
      out.sum += product;
      out.sum_sq += product * product;
    }
  };

  const std::size_t base = n_samples / lanes;
  const std::size_t rem = n_samples % lanes;
  if (lanes == 1) {
    run_lane(0, n_samples);
  } else {
    std::vector<std::thread> pool;
    for (unsigned lane = 0; lane < lanes; ++lane) {
      pool.emplace_back(run_lane, lane, base + (lane < rem ? 1 : 0));
    }
    for (auto& t : pool) t.join();
  }

  double sum = 0.0, sum_sq = 0.0;
  std::uint64_t rejections = 0;
  for (const auto& lane : lane_results) {  // fixed lane order
    sum += lane.sum;
    sum_sq += lane.sum_sq;
    rejections += lane.rejections;
  }
  const auto n = static_cast<double>(n_samples);
  const double mean = sum / n;
  const double variance =
      n_samples > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0))
                    : 0.0;
  const double scale = std::pow(domain.measure(), s);

  TraceMCEstimate est;
  est.s = s;
  est.estimate = scale * mean;
  est.std_error = scale * std::sqrt(variance / n);
  est.n_samples = n_samples;
  est.seed = seed;
  est.lanes = lanes;
  est.rejections = rejections;
  est.domain_hash = domain.content_hash();
  return est;
}

/// Paired comparison of the cyclic trace against the equal-measure ball
/// rasterized at the same h, with independently derived seeds (streams 1
/// and 2 of the given seed).
struct BllComparison {
  TraceMCEstimate domain_estimate;
  TraceMCEstimate ball_estimate;
  double combined_std_error = 0.0;
  // ball >= domain up to Monte Carlo noise (the inequality direction)
  bool consistent = false;
  // ball > domain established beyond 3 sigma
  bool significant = false;
};

inline BllComparison bll_compare(const RieszParams& params,
                                 const GridDomain& domain, int s,
                                 std::size_t n_samples, std::uint64_t seed,
                                 const TraceMCOptions& options = {}) {
  const GridDomain ball =
      rasterize(ball_rearrangement(domain), domain.h(), domain.dim());
  BllComparison cmp;
  cmp.domain_estimate = trace_cycle_mc(params, domain, s, n_samples,
                                       derive_seed(seed, 1), options);
  cmp.ball_estimate = trace_cycle_mc(params, ball, s, n_samples,
                                     derive_seed(seed, 2), options);
  cmp.combined_std_error = std::hypot(cmp.domain_estimate.std_error,
                                      cmp.ball_estimate.std_error);
  const double diff = cmp.ball_estimate.estimate - cmp.domain_estimate.estimate;
  cmp.consistent = diff > -3.0 * cmp.combined_std_error;
  cmp.significant = diff > 3.0 * cmp.combined_std_error;
  return cmp;
}

}  // namespace rieszlab

#endif  // RIESZLAB_TRACE_MC_HPP
