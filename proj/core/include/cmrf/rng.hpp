#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace cmrf {

__extension__ using u128 = unsigned __int128;

/// Deterministic generator: std::mt19937_64 with distribution code fixed here
/// rather than taken from the standard library, whose distributions are not
/// specified bit-for-bit across implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n) by multiply-high.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<u128>(engine_()) * n) >> 64);
  }
  int below(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

  /// Standard normal by Box-Muller (one draw per call).
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cmrf
