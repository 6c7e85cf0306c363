#pragma once

#include "sixv/hecke.hpp"
#include "sixv/model.hpp"
#include "sixv/parallel.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sixv {

/*
  The y -> 0 degeneration of the model: all crossing parameters become 1/q,
  and q R_k(1/q) = T_k + (q-1).  Multiplying these factors along a reduced
  word of w therefore computes q^{len(w)} (T_{w^{-1}})^{-1}, whose T-expansion
  carries the Kazhdan-Lusztig R-polynomials.  Working with the rescaled
  product keeps every coefficient in Z[q].
*/
inline HeckeElem<IntPoly> r_polynomial_element(const Perm& w) {
  HeckeElem<IntPoly> y = HeckeElem<IntPoly>::unit(w.n());
  IntPoly q = IntPoly::q(), qm1 = IntPoly::q_minus_one();
  for (int k : reduced_word(w)) y = mul_right_T_plus(y, k, qm1, q);
  return y;
}

inline HeckeElem<IntPoly> r_polynomial_element(const Word& word, int n) {
  if (!is_reduced(word, n)) throw std::invalid_argument("word is not reduced");
  HeckeElem<IntPoly> y = HeckeElem<IntPoly>::unit(n);
  IntPoly q = IntPoly::q(), qm1 = IntPoly::q_minus_one();
  for (int k : word) y = mul_right_T_plus(y, k, qm1, q);
  return y;
}

inline IntPoly r_polynomial(const Perm& pi, const Perm& w) {
  if (!bruhat_leq(pi, w)) return IntPoly();
  return r_polynomial_element(w).coeff(pi);
}

// ---------------------------------------------------------------------------
// Distinguished subexpressions

/*
  A subexpression of a reduced word takes or skips each letter; it is
  distinguished when a letter is never skipped while it would decrease the
  length of the partial product.  Weights (q-1)^{#skips} q^{#drops} sum to the
  R-polynomial of the subexpression's product.
*/
struct Subexpression {
  std::vector<std::uint8_t> mask; // 1 = letter taken
  int skips = 0;                  // |J^o|
  int drops = 0;                  // |J^-|
  IntPoly weight;
};

namespace detail {
inline void dist_subexpr_rec(const Perm& target, const Word& word, std::size_t j, Perm cur,
                             std::vector<std::uint8_t>& mask, int skips, int drops,
                             std::vector<Subexpression>& out) {
  if (j == word.size()) {
    if (cur == target) {
      IntPoly w(1);
      for (int t = 0; t < skips; ++t) w *= IntPoly::q_minus_one();
      out.push_back({mask, skips, drops, IntPoly::q_power(static_cast<std::size_t>(drops)) * w});
    }
    return;
  }
  int k = word[j];
  if (!cur.right_ascent(k)) { // skipping is forbidden: the letter must be taken
    mask[j] = 1;
    dist_subexpr_rec(target, word, j + 1, cur.times_s(k), mask, skips, drops + 1, out);
    return;
  }
  mask[j] = 1;
  dist_subexpr_rec(target, word, j + 1, cur.times_s(k), mask, skips, drops, out);
  mask[j] = 0;
  dist_subexpr_rec(target, word, j + 1, cur, mask, skips + 1, drops, out);
}
} // namespace detail

inline std::vector<Subexpression> distinguished_subexpressions(const Perm& pi, const Word& word) {
  if (!is_reduced(word, pi.n())) throw std::invalid_argument("word is not reduced");
  std::vector<Subexpression> out;
  std::vector<std::uint8_t> mask(word.size(), 0);
  detail::dist_subexpr_rec(pi, word, 0, Perm::identity(pi.n()), mask, 0, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Bounded affine permutations and positroids over small prime fields

struct BoundedAffine {
  std::vector<long> window; // f(1..n)
  int n = 0, m = 0;

  long at(long i) const { // periodic extension f(i+n) = f(i)+n
    long r = ((i - 1) % n + n) % n + 1;
    return window[static_cast<std::size_t>(r - 1)] + (i - r);
  }
  bool invariants_ok() const {
    long sum = 0;
    for (int i = 1; i <= n; ++i) {
      long f = window[static_cast<std::size_t>(i - 1)];
      if (f < i || f > i + n) return false;
      sum += f - i;
    }
    return sum == static_cast<long>(m) * n;
  }
  bool operator==(const BoundedAffine& o) const { return window == o.window && m == o.m; }
  bool operator<(const BoundedAffine& o) const { return window < o.window; }
};

// Descents only at position m: w(1)<...<w(m) and w(m+1)<...<w(n).
inline bool is_grassmannian(const Perm& w, int m) {
  for (int i = 1; i < w.n(); ++i)
    if (i != m && w(i) > w(i + 1)) return false;
  return true;
}

/*
  f_{pi,w} = pi . t_{omega_M} . w^{-1} read as composition of maps Z -> Z
  (right-to-left), each extended n-periodically; t_{omega_M} shifts [1,M] up
  by n.  For w = w^{M,N} this is i -> pi(i+M) on the window, the bounded
  affine permutation pi . id_M.
*/
inline BoundedAffine bounded_affine(const Perm& pi, const Perm& w, int m) {
  int n = pi.n();
  if (!is_grassmannian(w, m)) throw std::invalid_argument("w is not (M,N)-Grassmannian");
  Perm winv = w.inverse();
  auto ext = [n](const Perm& p, long i) {
    long r = ((i - 1) % n + n) % n + 1;
    return static_cast<long>(p(static_cast<int>(r))) + (i - r);
  };
  BoundedAffine f;
  f.n = n;
  f.m = m;
  for (int i = 1; i <= n; ++i) {
    long a = ext(winv, i);
    long b = a;
    {
      long r = ((a - 1) % n + n) % n + 1;
      if (r <= m) b = a + n; // t_{omega_M}
    }
    f.window.push_back(ext(pi, b));
  }
  return f;
}

// Dense matrix over F_p, rows x n columns.
struct FqMatrix {
  int rows = 0, cols = 0;
  long p = 2;
  std::vector<long> a; // row-major, entries in [0,p)

  long& at(int r, int c) { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
  long at(int r, int c) const { return a[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols) + static_cast<std::size_t>(c)]; }
};

namespace detail {

// incremental F_p span with membership queries
class FpSpan {
public:
  FpSpan(int dim, long p) : dim_(dim), p_(p) {}

  bool contains(std::vector<long> v) const {
    reduce(v);
    for (long x : v)
      if (x != 0) return false;
    return true;
  }
  void insert(std::vector<long> v) {
    reduce(v);
    for (int i = 0; i < dim_; ++i)
      if (v[static_cast<std::size_t>(i)] != 0) {
        long inv = mod_inverse(v[static_cast<std::size_t>(i)]);
        for (auto& x : v) x = x * inv % p_;
        basis_.push_back({i, v});
        return;
      }
  }
  int rank() const { return static_cast<int>(basis_.size()); }

private:
  long mod_inverse(long x) const { // p is prime and tiny
    long r = 1, b = x % p_, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return r;
  }
  void reduce(std::vector<long>& v) const {
    for (const auto& [pivot, row] : basis_) {
      long c = v[static_cast<std::size_t>(pivot)] % p_;
      if (c == 0) continue;
      for (int i = 0; i < dim_; ++i)
        v[static_cast<std::size_t>(i)] = ((v[static_cast<std::size_t>(i)] - c * row[static_cast<std::size_t>(i)]) % p_ + p_) % p_;
    }
  }
  int dim_;
  long p_;
  std::vector<std::pair<int, std::vector<long>>> basis_;
};

inline std::vector<long> column(const FqMatrix& a, long j) { // cyclic extension
  int c = static_cast<int>(((j - 1) % a.cols + a.cols) % a.cols);
  std::vector<long> v(static_cast<std::size_t>(a.rows));
  for (int r = 0; r < a.rows; ++r) v[static_cast<std::size_t>(r)] = a.at(r, c);
  return v;
}

} // namespace detail

// f_A(i) = min { j >= i : A_i lies in the span of A_{i+1},...,A_j }.
inline BoundedAffine f_of_matrix(const FqMatrix& a) {
  {
    detail::FpSpan all(a.rows, a.p);
    for (int c = 1; c <= a.cols; ++c) all.insert(detail::column(a, c));
    if (all.rank() != a.rows) throw std::invalid_argument("matrix is rank-deficient");
  }
  BoundedAffine f;
  f.n = a.cols;
  f.m = a.rows;
  for (int i = 1; i <= a.cols; ++i) {
    std::vector<long> target = detail::column(a, i);
    detail::FpSpan span(a.rows, a.p);
    long j = i;
    while (!span.contains(target)) {
      ++j;
      span.insert(detail::column(a, j));
    }
    f.window.push_back(j);
  }
  return f;
}

/*
  Points of the positroid strata attached to rectangle boundary conditions.
  The opposite Schubert cell (last M columns form a basis) is enumerated by
  its p^{MN} canonical representatives [ C | I_M ]; each matrix is binned by
  the boundary data read off its bounded affine permutation:

      Htilde = { (i, f(i)) : i, f(i) in [1,N] }
      Vtilde = { (i, f(i)) : i in [1-M, 0], f(i) in [N+1, n] }

  which match the (l-M, r) / (d-M, u) shifts of the model's boundary pairs.
*/
struct PositroidTable {
  // key: the (H, V) boundary pair in model coordinates
  std::map<std::pair<BoundaryCondition, BoundaryCondition>, long> counts;
};

inline std::pair<BoundaryCondition, BoundaryCondition> boundary_of_affine(const BoundedAffine& f,
                                                                          int m, int nn) {
  std::vector<std::pair<int, int>> h, v;
  for (int i = 1; i <= nn; ++i)
    if (f.at(i) >= 1 && f.at(i) <= nn) h.emplace_back(i + m, static_cast<int>(f.at(i)));
  for (int i = 1 - m; i <= 0; ++i) {
    long fi = f.at(i);
    if (fi >= nn + 1 && fi <= m + nn) v.emplace_back(i + m, static_cast<int>(fi));
  }
  return {BoundaryCondition(std::move(h)), BoundaryCondition(std::move(v))};
}

inline FqMatrix opposite_cell_matrix(int m, int nn, long p, long index) {
  FqMatrix a;
  a.rows = m;
  a.cols = m + nn;
  a.p = p;
  a.a.assign(static_cast<std::size_t>(m) * static_cast<std::size_t>(m + nn), 0);
  long rem = index;
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < nn; ++c) {
      a.at(r, c) = rem % p;
      rem /= p;
    }
  for (int r = 0; r < m; ++r) a.at(r, nn + r) = 1;
  return a;
}

inline long pow_long(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline PositroidTable count_positroid_points_table(int m, int nn, long p, int cap = 5) {
  if (m + nn > cap) throw std::invalid_argument("M+N exceeds the positroid enumeration cap");
  if (p != 2 && p != 3 && p != 5) throw std::invalid_argument("p must be one of 2, 3, 5");
  PositroidTable table;
  long total = pow_long(p, m * nn);
  for (long idx = 0; idx < total; ++idx) {
    FqMatrix a = opposite_cell_matrix(m, nn, p, idx);
    auto key = boundary_of_affine(f_of_matrix(a), m, nn);
    ++table.counts[key];
  }
  return table;
}

inline long count_positroid_points(int m, int nn, const BoundaryCondition& h,
                                   const BoundaryCondition& v, long p, int cap = 5) {
  auto table = count_positroid_points_table(m, nn, p, cap);
  auto it = table.counts.find({h, v});
  return it == table.counts.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------
// Counting pipe dreams in a rectangle

struct PipeDreamCounts {
  std::map<std::pair<BoundaryCondition, BoundaryCondition>, long> plain;
  std::map<std::pair<BoundaryCondition, BoundaryCondition>, IntPoly> q_analog;
};

inline PipeDreamCounts count_pipe_dreams_table(int m, int nn, int cap = 20) {
  if (m * nn > cap) throw std::invalid_argument("MN exceeds the pipe-dream enumeration cap");
  SkewDomain rect = SkewDomain::rectangle(m, nn);
  int nc = m * nn;
  PipeDreamCounts out;
  std::vector<std::uint8_t> tiles(static_cast<std::size_t>(nc), 0);
  for (std::uint64_t mask = 0; mask < (1ULL << nc); ++mask) {
    int xing = 0;
    for (int b = 0; b < nc; ++b) {
      tiles[static_cast<std::size_t>(b)] = (mask >> b) & 1u;
      xing += (mask >> b) & 1u;
    }
    Perm pi = sweep_pipe_dream(rect, tiles, [](std::size_t, const CellInfo&) {});
    auto key = std::make_pair(boundary_h(pi, m, nn), boundary_v(pi, m, nn));
    ++out.plain[key];
    out.q_analog[key] += IntPoly::q_power(static_cast<std::size_t>(xing));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conditional shift identities for arbitrary permutations

/*
  The six strict-boundary probabilities attached to (w, alpha, delta): within
  SAT(H,V) under the strict boundary sets, the mass is split by the position
  of pi(alpha) relative to delta and of pi^{-1}(delta) relative to alpha.  The
  conjectured identities equate ratios against the swap z_alpha <-> z_beta,
  beta = w^{-1}(delta); they are checked in cross-multiplied form.
*/
struct StrictSums {
  Rat xx, mu, mm, md, um, dm;
};

inline std::map<std::pair<BoundaryCondition, BoundaryCondition>, StrictSums> strict_boundary_sums(
    const HeckeElem<Rat>& y, int alpha, int delta) {
  std::map<std::pair<BoundaryCondition, BoundaryCondition>, StrictSums> out;
  for (const auto& [pi, c] : y.terms()) {
    auto key = std::make_pair(boundary_h_strict(pi, alpha, delta), boundary_v_strict(pi, alpha, delta));
    StrictSums& s = out[key];
    s.xx += c;
    int pa = pi(alpha);
    int pid = pi.inverse()(delta);
    if (pa > delta)
      s.mu += c;
    else if (pa == delta)
      s.mm += c;
    else
      s.md += c;
    if (pid > alpha)
      s.um += c;
    else if (pid < alpha)
      s.dm += c;
  }
  return out;
}

struct ConjectureReport {
  long combinations_checked = 0; // (w, alpha, delta, H, V) tuples
  long points_per_combination = 0;
  std::vector<std::string> counterexamples;

  bool clean() const { return counterexamples.empty(); }
};

inline bool is_inversion_pair(const Perm& w, int alpha, int delta) {
  int beta = w.inverse()(delta);
  int gamma = w(alpha);
  return (alpha < beta && gamma > delta) || (alpha > beta && gamma < delta);
}

inline ConjectureReport conjecture_shift_scan(int n, int trials, std::uint64_t seed,
                                              unsigned workers = 1, PointOptions opt = {}) {
  if (n > 6) throw std::invalid_argument("conjecture scan capped at n = 6");
  std::vector<Perm> perms = all_perms(n);
  ConjectureReport rep;
  rep.points_per_combination = trials;
  std::vector<std::vector<std::string>> bad(perms.size());
  std::vector<long> counted(perms.size(), 0);
  parallel_for(perms.size(), workers, [&](std::size_t wi) {
    const Perm& w = perms[wi];
    for (int t = 0; t < trials; ++t) {
      EvalPoint pt = random_wiring_point(n, derive_seed(seed, wi, static_cast<std::uint64_t>(t)), opt);
      HeckeElem<Rat> y = yang_baxter_basis(w, pt);
      for (int alpha = 1; alpha <= n; ++alpha)
        for (int delta = 1; delta <= n; ++delta) {
          if (is_inversion_pair(w, alpha, delta)) continue;
          int beta = w.inverse()(delta);
          HeckeElem<Rat> ys = yang_baxter_basis(w, pt.swapped(alpha, beta));
          auto sums = strict_boundary_sums(y, alpha, delta);
          auto sums_swapped = strict_boundary_sums(ys, alpha, delta);
          for (const auto& [key, s] : sums) {
            const StrictSums& z = sums_swapped[key];
            bool ok = s.mu * z.xx == z.dm * s.xx && s.mm * z.xx == z.mm * s.xx &&
                      s.md * z.xx == z.um * s.xx;
            if (t == 0) ++counted[wi];
            if (!ok)
              bad[wi].push_back("w=" + w.to_string() + " alpha=" + std::to_string(alpha) +
                                " delta=" + std::to_string(delta) + " point " + std::to_string(t));
          }
        }
    }
  });
  for (std::size_t wi = 0; wi < perms.size(); ++wi) {
    rep.combinations_checked += counted[wi];
    for (auto& s : bad[wi]) rep.counterexamples.push_back(std::move(s));
  }
  return rep;
}

} // namespace sixv
