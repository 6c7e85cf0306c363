#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>

namespace sixv {

/*
  Deterministic, splittable randomness.

  Everything downstream of a user-visible seed goes through this generator so
  that runs are reproducible bit-for-bit across platforms.  std:: distributions
  are avoided on purpose: their output is implementation-defined.
*/

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Prng {
public:
  explicit Prng(std::uint64_t seed) : state_(seed ^ 0x2545f4914f6cdd1dULL) {
    // warm up so that small seeds decorrelate
    next_u64();
    next_u64();
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  // uniform in [0, bound)
  std::uint64_t next_below(std::uint64_t bound) {
    // rejection to kill modulo bias
    std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % bound;
  }

  // uniform in [lo, hi] inclusive
  long next_in(long lo, long hi) {
    return lo + static_cast<long>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  // uniform double in (0,1)
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
  }

  // 63-bit numerator for exact Bernoulli draws against rational probabilities
  std::uint64_t next_u63() { return next_u64() >> 1; }

  double next_normal() {
    // Box-Muller; uses two uniforms per pair, second one discarded for
    // simplicity (determinism matters more than throughput here).
    double u1 = next_unit();
    double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

  // Marsaglia-Tsang, with the standard boost for shape < 1.
  double next_gamma(double shape) {
    if (shape < 1.0) {
      double u = next_unit();
      return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = next_normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = next_unit();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double next_beta(double a, double b) {
    double x = next_gamma(a);
    double y = next_gamma(b);
    return x / (x + y);
  }

private:
  std::uint64_t state_;
};

// Stable seed derivation for parallel batches and per-site disorder.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t s = seed;
  splitmix64(s);
  s ^= 0x9e3779b97f4a7c15ULL * (a + 1);
  splitmix64(s);
  s ^= 0xc2b2ae3d27d4eb4fULL * (b + 1);
  splitmix64(s);
  s ^= 0x165667b19e3779f9ULL * (c + 1);
  return splitmix64(s);
}

} // namespace sixv
