#pragma once

#include <cstdint>

namespace ssclab {

/// Deterministic 64-bit generator (splitmix64).
///
/// Used everywhere instead of <random> engines so that identical seeds
/// produce identical streams on every platform and standard library, which
/// the reporting layer relies on for byte-identical reruns.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n == 0 returns 0.
  std::uint64_t below(std::uint64_t n);

  /// Independent stream for a (seed, a, b, c) tuple. Streams for distinct
  /// tuples are uncorrelated, so work items can be evaluated in any order.
  static Rng derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                    std::uint64_t c = 0);

 private:
  std::uint64_t state_;
};

}  // namespace ssclab
