#ifndef RIESZLAB_SPECTRA_HPP
#define RIESZLAB_SPECTRA_HPP

#include <lapacke.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rieszlab/assemble.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/kernel.hpp"

namespace rieszlab {

/// Full spectrum of a symmetric matrix, eigenvalues descending (units
/// length^alpha); eigenvector columns, when present, align with eigenvalues.
struct Spectrum {
  Eigen::VectorXd eigenvalues;
  std::optional<Eigen::MatrixXd> eigenvectors;
  DomainRef source;

  double lambda(std::size_t j) const { return eigenvalues(j); }  // 0-based
  std::size_t size() const {
    return static_cast<std::size_t>(eigenvalues.size());
  }
};

/// Full dense symmetric eigendecomposition (LAPACK divide and conquer);
/// deterministic for identical input and thread count.
inline Spectrum eigen_sym(const OperatorMatrix& matrix, bool with_vectors) {
  const auto n = static_cast<lapack_int>(matrix.entries.rows());
  if (!matrix.entries.allFinite()) {
    throw DataError("eigen_sym: matrix has non-finite entries");
  }
  Eigen::MatrixXd work = matrix.entries;  // column-major, overwritten
  Eigen::VectorXd w(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, with_vectors ? 'V' : 'N', 'L', n,
                     work.data(), n, w.data());
  if (info != 0) {
    throw DataError("eigen_sym: dsyevd failed with info = " +
                    std::to_string(info));
  }
  Spectrum spec;
  spec.source = matrix.domain_ref;
  spec.eigenvalues = w.reverse();  // LAPACK returns ascending
  if (with_vectors) {
    spec.eigenvectors = work.rowwise().reverse();
  }
  return spec;
}

/// Schatten p-norm report; below_threshold_flag marks p <= p0 = d/alpha,
/// where the discrete value is finite but not refinement-stable.
struct SchattenReport {
  double p = 0.0;  // +inf for the operator norm
  double value = 0.0;
  double p0 = 0.0;
  bool below_threshold_flag = false;
  double clipped_mass = 0.0;  // total magnitude of negative eigenvalues
  std::size_t clipped_count = 0;
};

/// (sum_j lambda_j^p)^{1/p} over eigenvalues clipped below at zero; p = inf
/// gives the operator norm lambda_1. Clipped mass is reported, not hidden.
inline SchattenReport schatten_norm(const Spectrum& spec,
                                    const RieszParams& params, double p) {
  const bool infinite = std::isinf(p);
  if (!infinite && !(p >= 1.0)) {
    throw DomainError("schatten_norm: p = " + std::to_string(p) +
                      " violates p >= 1");
  }
  SchattenReport report;
  report.p = p;
  report.p0 = params.p0();
  report.below_threshold_flag = !infinite && p <= report.p0;
  double clipped = 0.0;
  std::size_t count = 0;
  double sum = 0.0;
  double top = 0.0;
  for (Eigen::Index j = 0; j < spec.eigenvalues.size(); ++j) {
    double lambda = spec.eigenvalues(j);
    if (lambda < 0.0) {
      clipped += -lambda;
      ++count;
      lambda = 0.0;
    }
    if (j == 0) top = lambda;
    if (!infinite) sum += std::pow(lambda, p);
  }
  report.clipped_mass = clipped;
  report.clipped_count = count;
  report.value = infinite ? top : std::pow(sum, 1.0 / p);
  return report;
}

struct DecayEnvelope {
  double constant = 0.0;   // max_j lambda_j j^theta / |Omega|^theta
  std::size_t arg_j = 0;   // 1-based index attaining the max
};

/// Empirical constant in lambda_j <= C |Omega|^theta j^{-theta}; optionally
/// restricted to the first j_limit eigenvalues.
inline DecayEnvelope decay_envelope(const Spectrum& spec,
                                    const RieszParams& params, double measure,
                                    std::size_t j_limit = 0) {
  if (!(measure > 0.0)) throw DomainError("decay_envelope: measure must be > 0");
  if (spec.size() == 0) throw DomainError("decay_envelope: empty spectrum");
  const double theta = params.theta();
  const double scale = std::pow(measure, theta);
  std::size_t limit = spec.size();
  if (j_limit > 0) limit = std::min(limit, j_limit);
  DecayEnvelope env;
  for (std::size_t j = 1; j <= limit; ++j) {
    const double value =
        spec.lambda(j - 1) * std::pow(static_cast<double>(j), theta) / scale;
    if (value > env.constant) {
      env.constant = value;
      env.arg_j = j;
    }
  }
  return env;
}

/// Outcome of the positive-kernel (Jentsch) structure check.
struct JentschReport {
  bool skipped = false;       // disconnected domain: assertions not applicable
  bool applicable_pass = false;
  bool simple = false;        // (l1 - l2)/l1 > 1e-6
  bool u1_positive = false;
  bool u2_sign_changing = false;
  double gap = std::numeric_limits<double>::quiet_NaN();  // l1 - l2
  double relative_gap = std::numeric_limits<double>::quiet_NaN();
  std::size_t n = 0;
};

/// For connected domains: largest eigenvalue simple, first eigenvector of
/// one sign, second eigenvector sign-changing. For disconnected domains the
/// check is reported as skipped with the near-degeneracy recorded.
inline JentschReport jentsch_check(const Spectrum& spec, bool connected) {
  if (!spec.eigenvectors.has_value()) {
    throw UsageError("jentsch_check: spectrum carries no eigenvectors");
  }
  JentschReport report;
  report.n = spec.size();
  if (report.n >= 2) {
    report.gap = spec.lambda(0) - spec.lambda(1);
    report.relative_gap = report.gap / spec.lambda(0);
  }
  if (!connected) {
    report.skipped = true;
    return report;
  }
  if (report.n == 1) {  // no second eigenvalue; positivity of u1 still checked
    const double u = (*spec.eigenvectors)(0, 0);
    report.u1_positive = u != 0.0;
    report.simple = true;
    report.u2_sign_changing = true;  // vacuous
    report.applicable_pass = report.u1_positive;
    return report;
  }
  report.simple = report.relative_gap > 1e-6;

  const Eigen::MatrixXd& v = *spec.eigenvectors;
  // sign-normalize: largest-magnitude entry positive
  Eigen::Index arg_max = 0;
  v.col(0).cwiseAbs().maxCoeff(&arg_max);
  const double sign = v(arg_max, 0) >= 0.0 ? 1.0 : -1.0;
  report.u1_positive = (sign * v.col(0).array() > 0.0).all();
  report.u2_sign_changing =
      (v.col(1).array() > 0.0).any() && (v.col(1).array() < 0.0).any();
  report.applicable_pass =
      report.simple && report.u1_positive && report.u2_sign_changing;
  return report;
}

}  // namespace rieszlab

#endif  // RIESZLAB_SPECTRA_HPP
