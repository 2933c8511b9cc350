#pragma once

#include <complex>
#include <cstdint>

namespace diskmean {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so that seeded sweeps produce identical streams on every
/// platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  /// Uniform over the closed disk of the given radius (area measure).
  std::complex<double> in_disk(double radius) {
    const double rho = radius * std::sqrt(next_double());
    const double t = uniform(-3.14159265358979323846, 3.14159265358979323846);
    return {rho * std::cos(t), rho * std::sin(t)};
  }

  /// Uniform over the annulus lo <= |w| <= hi intersected with |Im w| <= imax.
  std::complex<double> in_clipped_annulus(double lo, double hi, double imax) {
    for (;;) {
      const double re = uniform(-hi, hi);
      const double im = uniform(-imax, imax);
      const double a = std::hypot(re, im);
      if (a >= lo && a <= hi) return {re, im};
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace diskmean
