#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace pkt {

/// mt19937_64 with distribution code written out here, so draws are identical
/// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::initializer_list<std::uint64_t> seeds);

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n), n > 0, unbiased.
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Box-Muller, no caching).
  double normal();

 private:
  std::mt19937_64 engine_;
};

}  // namespace pkt
