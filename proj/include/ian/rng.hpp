#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ian {

// Deterministic sampling on top of mt19937_64. The engine itself is fully
// specified by the standard, but the <random> distributions are not, so
// byte-identical generation across toolchains requires doing the transforms
// by hand.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Unbiased integer in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t reject = (0 - n) % n;  // 2^64 mod n
    for (;;) {
      std::uint64_t x = eng_();
      if (x >= reject) return x % n;
    }
  }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_cache_) {
      have_cache_ = false;
      return cache_;
    }
    double u1 = 1.0 - uniform01();  // in (0, 1], keeps log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cache_ = r * std::sin(a);
    have_cache_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double cache_ = 0;
  bool have_cache_ = false;
};

}  // namespace ian
