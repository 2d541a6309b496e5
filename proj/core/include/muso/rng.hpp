#pragma once

#include <cstdint>
#include <random>

namespace muso {

/// Deterministic random source. Every random draw in the library flows from
/// one seeded instance so that a run is reproducible from (config, seed).
/// Doubles are derived from the raw 64-bit stream by fixed bit manipulation,
/// not through std distributions, so sequences do not depend on the standard
/// library implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t bits() { return eng_(); }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace muso
