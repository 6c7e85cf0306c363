#pragma once

#include "sixv/rational.hpp"
#include "sixv/rng.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sixv {

/*
  Exact evaluation points for the rapidity variables.

  Two coordinate systems appear: wiring coordinates z_1..z_n, and skew
  coordinates (x_1..x_M ; y_1..y_N).  The crossing parameter is

      p_{i,j} = (z_j - z_i) / (z_j - q z_i)        (wiring)
      p_{i,j} = (y_j - x_i) / (y_j - q x_i)        (skew: column i, row j)

  A point is valid when q is not 0 or 1 and no denominator above vanishes.
*/

struct EvalPoint { // wiring convention
  Rat q;
  std::vector<Rat> z; // z[i-1] is z_i

  const Rat& zat(int i) const { return z[static_cast<std::size_t>(i - 1)]; }

  EvalPoint swapped(int a, int b) const {
    EvalPoint p = *this;
    std::swap(p.z[static_cast<std::size_t>(a - 1)], p.z[static_cast<std::size_t>(b - 1)]);
    return p;
  }
};

struct SkewPoint { // skew-domain convention
  Rat q;
  std::vector<Rat> x, y;

  const Rat& xat(int i) const { return x[static_cast<std::size_t>(i - 1)]; }
  const Rat& yat(int j) const { return y[static_cast<std::size_t>(j - 1)]; }
};

inline Rat p_of(const Rat& q, const Rat& lo, const Rat& hi) {
  Rat den = hi - q * lo;
  if (den == 0) throw singular_point("vanishing denominator in p parameter");
  return (hi - lo) / den;
}

inline Rat p_param(const EvalPoint& pt, int i, int j) { return p_of(pt.q, pt.zat(i), pt.zat(j)); }
inline Rat p_param(const SkewPoint& pt, int i, int j) { return p_of(pt.q, pt.xat(i), pt.yat(j)); }

inline bool point_valid(const EvalPoint& pt) {
  if (pt.q == 0 || pt.q == 1) return false;
  int n = static_cast<int>(pt.z.size());
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && pt.zat(j) - pt.q * pt.zat(i) == 0) return false;
  return true;
}

inline bool point_valid(const SkewPoint& pt) {
  if (pt.q == 0 || pt.q == 1) return false;
  for (const Rat& xi : pt.x)
    for (const Rat& yj : pt.y)
      if (yj - pt.q * xi == 0) return false;
  return true;
}

struct PointOptions {
  long box = 1000000;        // numerators and denominators drawn from [1, box]
  bool probability = false;  // force 0 < q < 1 (and 0 < x_i < y_j for skew points)
  int max_attempts = 256;
};

inline Rat random_positive_rat(Prng& rng, long box) {
  return Rat(Int(rng.next_in(1, box)), Int(rng.next_in(1, box)));
}

inline Rat random_q(Prng& rng, const PointOptions& opt) {
  for (;;) {
    if (opt.probability) {
      long den = rng.next_in(2, opt.box);
      long num = rng.next_in(1, den - 1);
      return Rat(Int(num), Int(den));
    }
    Rat q = random_positive_rat(rng, opt.box);
    if (q != 0 && q != 1) return q;
  }
}

inline EvalPoint random_wiring_point(int n, std::uint64_t seed, PointOptions opt = {}) {
  Prng rng(derive_seed(seed, 0x77697265));
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    EvalPoint pt;
    pt.q = random_q(rng, opt);
    pt.z.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pt.z.push_back(random_positive_rat(rng, opt.box));
    if (point_valid(pt)) return pt;
  }
  throw std::runtime_error("random_wiring_point: resampling exhausted");
}

inline SkewPoint random_skew_point(int m, int n, std::uint64_t seed, PointOptions opt = {}) {
  Prng rng(derive_seed(seed, 0x736b6577));
  for (int attempt = 0; attempt < opt.max_attempts; ++attempt) {
    SkewPoint pt;
    pt.q = random_q(rng, opt);
    for (int i = 0; i < m; ++i) {
      Rat x = random_positive_rat(rng, opt.box);
      if (opt.probability) x /= Rat(2) * (Rat(1) + x); // maps to (0, 1/2)
      pt.x.push_back(x);
    }
    for (int j = 0; j < n; ++j) {
      Rat y = random_positive_rat(rng, opt.box);
      if (opt.probability) y = Rat(1) - y / (Rat(2) * (Rat(1) + y)); // maps to (1/2, 1)
      pt.y.push_back(y);
    }
    if (point_valid(pt)) return pt;
  }
  throw std::runtime_error("random_skew_point: resampling exhausted");
}

/*
  Schwartz-Zippel style identity testing: evaluate both sides at random
  rational points.  Singular points are skipped and resampled, never silently
  evaluated.  A FAIL comes with the witness point.
*/
struct IdentityReport {
  bool pass = true;
  int trials_done = 0;
  int skipped = 0;
  std::optional<EvalPoint> witness;
  std::optional<std::pair<Rat, Rat>> witness_values;
  std::vector<EvalPoint> points;
};

inline IdentityReport identity_test(int n, const std::function<Rat(const EvalPoint&)>& lhs,
                                    const std::function<Rat(const EvalPoint&)>& rhs, int trials,
                                    std::uint64_t seed, PointOptions opt = {}) {
  IdentityReport rep;
  for (int t = 0; rep.trials_done < trials; ++t) {
    if (t > trials + opt.max_attempts)
      throw std::runtime_error("identity_test: too many singular points");
    EvalPoint pt = random_wiring_point(n, derive_seed(seed, static_cast<std::uint64_t>(t)), opt);
    Rat a, b;
    try {
      a = lhs(pt);
      b = rhs(pt);
    } catch (const singular_point&) {
      ++rep.skipped;
      continue;
    }
    ++rep.trials_done;
    rep.points.push_back(pt);
    if (a != b) {
      rep.pass = false;
      rep.witness = pt;
      rep.witness_values = {a, b};
      return rep;
    }
  }
  return rep;
}

} // namespace sixv
