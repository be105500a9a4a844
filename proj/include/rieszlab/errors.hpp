#ifndef RIESZLAB_ERRORS_HPP
#define RIESZLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rieszlab {

/// Parameter outside its admissible range (e.g. alpha outside (0, d)).
struct DomainError : std::invalid_argument {
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Kernel evaluated at r <= 0; callers must use the self-term rule instead.
struct SingularityError : std::domain_error {
  explicit SingularityError(const std::string& what) : std::domain_error(what) {}
};

/// Dense allocation guard exceeded.
struct CapacityError : std::length_error {
  explicit CapacityError(const std::string& what) : std::length_error(what) {}
};

/// Rasterization selected zero cells (h too coarse for the shape).
struct EmptyDomainError : std::runtime_error {
  explicit EmptyDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Requested dimension or mode is not supported by this operation.
struct UnsupportedError : std::runtime_error {
  explicit UnsupportedError(const std::string& what) : std::runtime_error(what) {}
};

/// Integral or sum does not converge for the requested exponents.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent experiment configuration.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite values where finite data is required.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

/// API misuse (e.g. a check that needs eigenvectors called without them).
struct UsageError : std::logic_error {
  explicit UsageError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace rieszlab

#endif  // RIESZLAB_ERRORS_HPP
