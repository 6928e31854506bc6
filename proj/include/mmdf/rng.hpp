#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mmdf {

/// Seedable random stream. Every stochastic draw of the optimizer goes through
/// one of these, so a seed fixes a run bit-for-bit.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix(seed)) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t reject_from = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= reject_from);
    return static_cast<std::size_t>(x % bound);
  }

  /// Child stream whose seed is derived from, and advances, this one.
  Rng split() { return Rng(engine_()); }

private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace mmdf
