#pragma once

#include <cmath>
#include <cstdint>

#include "finsler/rational.hpp"

namespace finsler {

// splitmix64-based generator. Not hardware dependent and not tied to any
// standard-library distribution, so identical seeds give identical streams on
// every platform; report determinism relies on that.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t nextU64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(nextU64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [lo, hi] inclusive.
  long uniformInt(long lo, long hi) {
    return lo + static_cast<long>(nextU64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // Standard normal via Box-Muller (deterministic given the uniform stream).
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Small exact rational with numerator in [-num, num] and denominator in [1, den].
  Rational smallRational(long num, long den) {
    return ratFromLong(uniformInt(-num, num), uniformInt(1, den));
  }

 private:
  std::uint64_t state_;
};

}  // namespace finsler
