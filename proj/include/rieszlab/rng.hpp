#ifndef RIESZLAB_RNG_HPP
#define RIESZLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace rieszlab {

/// splitmix64 mixing step; used only to derive well-separated stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Documented seed splitting: stream k of a base seed.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Deterministic 64-bit stream: std::mt19937_64 (algorithm pinned by the
/// C++ standard, so identical seeds give identical streams on every
/// platform) with an explicit 53-bit uniform conversion; the distribution
/// templates of <random> are not portable and are avoided.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace rieszlab

#endif  // RIESZLAB_RNG_HPP
