#ifndef GRASSGEO_RNG_HPP
#define GRASSGEO_RNG_HPP

#include <cmath>
#include <cstdint>

#include "grassgeo/complex_matrix.hpp"

namespace grassgeo {

/// Counter-based generator: each output is a hash of (key, counter), so a
/// stream is a pure function of its seed and position. Portable across
/// platforms up to libm rounding in the Gaussian transform.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t seed) : key_(mix(seed ^ 0x6A09E667F3BCC909ull)) {}

  /// Derives an independent subkey, e.g. one per trial.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
    return mix(mix(seed ^ 0x9E3779B97F4A7C15ull) + index * 0xBF58476D1CE4E5B9ull);
  }

  std::uint64_t next_u64() { return mix(key_ + counter_++ * 0x9E3779B97F4A7C15ull); }

  /// Uniform in [0, 1).
  double next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - next_uniform();  // (0, 1]
    const double u2 = next_uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.28318530717958647692 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  cplx next_complex_gaussian() {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return cplx(re, im);
  }

private:
  static std::uint64_t mix(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace grassgeo

#endif
