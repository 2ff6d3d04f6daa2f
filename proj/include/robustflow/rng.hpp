// Deterministic random source for instance generation.
//
// All draws reduce to the mt19937_64 bit stream, whose output is fixed by the
// standard, so instances are reproducible across platforms and standard
// libraries. std::*_distribution is deliberately avoided (its algorithms are
// implementation-defined). Draw site order is documented at each generator.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "robustflow/common.hpp"

namespace robustflow {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  // Uniform on [0,1) with 53-bit resolution: one engine draw.
  double uniform() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0,1): rejects exact zeros.
  double uniform_open() {
    double u = uniform();
    while (u == 0.0) u = uniform();
    return u;
  }

  // Unbiased integer on [0,n): rejection sampling on the high bits.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw InputError("Rng::below: n must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = bits();
    while (v >= limit) v = bits();
    return v % n;
  }

  // Standard normal via Box-Muller. Always consumes exactly two uniforms;
  // the second coordinate is discarded to keep the stream layout simple.
  double normal() {
    const double u1 = uniform_open();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  // Poisson by Knuth's product-of-uniforms method; one uniform per event.
  // Suitable for the moderate means used by the instance generators.
  int poisson(double mean) {
    if (mean < 0.0) throw InputError("Rng::poisson: mean must be nonnegative");
    if (mean > 500.0) {
      // exp(-mean) underflows; fall back to the normal approximation.
      const double v = mean + std::sqrt(mean) * normal();
      return v < 0.0 ? 0 : static_cast<int>(v + 0.5);
    }
    const double threshold = std::exp(-mean);
    int count = 0;
    double product = uniform_open();
    while (product > threshold) {
      ++count;
      product *= uniform_open();
    }
    return count;
  }

 private:
  static constexpr double kPi = 3.14159265358979323846;
  std::mt19937_64 engine_;
};

}  // namespace robustflow
