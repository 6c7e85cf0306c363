#pragma once

#include "sixv/model.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sixv {

/*
  Verifiers for the distributional symmetries of the model: the 180-degree
  flip on rectangles, its generalization with parabolic factors, and the joint
  height-function invariance under admissible transformations of cut tuples.

  All checks are exact: both sides are evaluated at random rational points and
  compared as rationals.  INVALID (precondition fails; a user error) is kept
  distinct from FAIL (identity fails; a refutation with witness).
*/

enum class Status { PASS, FAIL, INVALID };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::PASS: return "PASS";
    case Status::FAIL: return "FAIL";
    default: return "INVALID";
  }
}

struct Verdict {
  Status status = Status::PASS;
  std::string detail;
  int points_used = 0;
  int points_skipped = 0;
  std::optional<SkewPoint> witness;

  bool passed() const { return status == Status::PASS; }
};

// ---------------------------------------------------------------------------
// Flip theorem on rectangles

struct FlipInstance {
  int m = 0, n = 0; // M columns, N rows
  BoundaryCondition h, v;
  // right-hand side target; defaults to the 180-degree rotation of h, and
  // mutation fixtures override it to force a refutable comparison
  std::optional<BoundaryCondition> h_target;
};

inline bool flip_instance_valid(const FlipInstance& inst) {
  int tot = inst.m + inst.n;
  for (auto [l, r] : inst.h.pairs())
    if (l <= inst.m || l > tot || r < 1 || r > inst.n) return false;
  for (auto [d, u] : inst.v.pairs())
    if (d < 1 || d > inst.m || u <= inst.n || u > tot) return false;
  if (inst.h_target)
    for (auto [l, r] : inst.h_target->pairs())
      if (l <= inst.m || l > tot || r < 1 || r > inst.n) return false;
  return true;
}

using BoundaryKey = std::pair<BoundaryCondition, BoundaryCondition>;
using BoundaryTable = std::map<BoundaryKey, Rat>;

inline BoundaryTable boundary_table(const HeckeElem<Rat>& y, int ci, int cj) {
  BoundaryTable t;
  for (const auto& [pi, c] : y.terms()) {
    auto [it, inserted] = t.emplace(BoundaryKey{boundary_h(pi, ci, cj), boundary_v(pi, ci, cj)}, c);
    if (!inserted) it->second += c;
  }
  for (auto it = t.begin(); it != t.end();) it = it->second == 0 ? t.erase(it) : std::next(it);
  return t;
}

inline SkewPoint random_rect_point(int m, int n, std::uint64_t seed, const PointOptions& opt) {
  return random_skew_point(m, n, seed, opt);
}

/*
  P^{H,V}(x,y) = P^{180(H),V}(x, rev(y)).  When `scan_all` is set, every
  realized boundary pair of the left-hand element is compared; otherwise only
  the pair of the instance.
*/
inline Verdict verify_flip(const FlipInstance& inst, int trials, std::uint64_t seed,
                           bool scan_all = false, PointOptions opt = {}) {
  Verdict out;
  if (!flip_instance_valid(inst)) {
    out.status = Status::INVALID;
    out.detail = "boundary pairs outside the rectangle windows";
    return out;
  }
  SkewDomain rect = SkewDomain::rectangle(inst.m, inst.n);
  int tot = inst.m + inst.n;
  for (int t = 0; t < trials; ++t) {
    SkewPoint pt = random_rect_point(inst.m, inst.n, derive_seed(seed, static_cast<std::uint64_t>(t)), opt);
    SkewPoint rev = pt;
    std::reverse(rev.y.begin(), rev.y.end());
    BoundaryTable lhs, rhs;
    try {
      lhs = boundary_table(exact_distribution(rect, pt), inst.m, inst.n);
      rhs = boundary_table(exact_distribution(rect, rev), inst.m, inst.n);
    } catch (const singular_point&) {
      ++out.points_skipped;
      continue;
    }
    ++out.points_used;
    auto value = [](const BoundaryTable& t, const BoundaryKey& k) {
      auto it = t.find(k);
      return it == t.end() ? Rat(0) : it->second;
    };
    auto check_pair = [&](const BoundaryCondition& h, const BoundaryCondition& v) {
      Rat a = value(lhs, {h, v});
      Rat b = value(rhs, {flip_180(h, tot), v});
      if (a != b) {
        out.status = Status::FAIL;
        out.witness = pt;
        std::ostringstream os;
        os << "flip identity fails at point " << t << ": lhs=" << rat_to_string(a)
           << " rhs=" << rat_to_string(b);
        out.detail = os.str();
        return false;
      }
      return true;
    };
    if (scan_all) {
      for (const auto& [key, coef] : lhs)
        if (!check_pair(key.first, key.second)) return out;
      // coverage in the other direction: 180 is an involution on keys
      for (const auto& [key, coef] : rhs)
        if (!check_pair(flip_180(key.first, tot), key.second)) return out;
    } else if (inst.h_target) {
      Rat a = value(lhs, {inst.h, inst.v});
      Rat b = value(rhs, {*inst.h_target, inst.v});
      if (a != b) {
        out.status = Status::FAIL;
        out.witness = pt;
        out.detail = "lhs=" + rat_to_string(a) + " rhs=" + rat_to_string(b) +
                     " against the overridden target";
        return out;
      }
    } else {
      if (!check_pair(inst.h, inst.v)) return out;
    }
  }
  return out;
}

// All boundary pairs realized by the rectangle distribution, collected from
// one exact evaluation.
inline std::vector<BoundaryKey> realized_boundary_pairs(int m, int n, std::uint64_t seed) {
  SkewDomain rect = SkewDomain::rectangle(m, n);
  SkewPoint pt = random_rect_point(m, n, derive_seed(seed, 0xb0717d), {});
  BoundaryTable t = boundary_table(exact_distribution(rect, pt), m, n);
  std::vector<BoundaryKey> keys;
  keys.reserve(t.size());
  for (const auto& [k, c] : t) keys.push_back(k);
  return keys;
}

// ---------------------------------------------------------------------------
// Generalized flip

struct GenFlipInstance {
  int n = 0, ci = 0, cj = 0, m = 0, nn = 0; // rectangle block is m x nn
  Perm w_left, w_down, w_up, w_right;
  std::optional<BoundaryCondition> h, v; // absent: scan all realized pairs
};

// permutations moving only [a,b]
inline bool in_parabolic(const Perm& w, int a, int b) {
  for (int t = 1; t <= w.n(); ++t)
    if ((t < a || t > b) && w(t) != t) return false;
  return true;
}

inline Perm genflip_rect_perm(int n, int ci, int cj, int m, int nn) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int r = 1; r <= n; ++r) {
    int v = r;
    if (r >= ci - m + 1 && r <= ci)
      v = r + m + cj - ci;
    else if (r >= ci + 1 && r <= ci + nn)
      v = r - nn + cj - ci;
    img[static_cast<std::size_t>(r - 1)] = v;
  }
  return Perm(std::move(img));
}

inline BoundaryCondition flip_180_at(const BoundaryCondition& h, int ci, int cj) {
  return flip_180(h, ci + cj);
}

inline Verdict verify_generalized_flip(const GenFlipInstance& g, int trials, std::uint64_t seed,
                                       PointOptions opt = {}) {
  Verdict out;
  auto invalid = [&](const std::string& why) {
    out.status = Status::INVALID;
    out.detail = why;
    return out;
  };
  if (g.ci < 1 || g.ci > g.n - 1 || g.cj < 1 || g.cj > g.n - 1)
    return invalid("cutoff levels outside [1,n-1]");
  if (g.m < 1 || g.m > g.ci || g.nn < 1 || g.nn > g.cj) return invalid("M,N outside [1,ci]x[1,cj]");
  if (g.nn + g.ci != g.m + g.cj) return invalid("N + ci != M + cj");
  if (!in_parabolic(g.w_left, g.ci + 1, g.n)) return invalid("w_left not in S_[ci+1,n]");
  if (!in_parabolic(g.w_down, 1, g.ci)) return invalid("w_down not in S_[1,ci]");
  if (!in_parabolic(g.w_up, g.cj + 1, g.n)) return invalid("w_up not in S_[cj+1,n]");
  if (!in_parabolic(g.w_right, 1, g.cj)) return invalid("w_right not in S_[1,cj]");
  auto [kmin, kmax] = star_window(g.n, g.ci, g.cj);
  if (g.ci + g.cj != g.n) {
    if (!in_parabolic(g.w_left, kmin, kmax)) return invalid("w_left leaves the [kmin,kmax] window");
    if (!in_parabolic(g.w_right, kmin, kmax)) return invalid("w_right leaves the [kmin,kmax] window");
    if (g.ci - g.m + 1 < kmin || g.ci + g.nn > kmax)
      return invalid("rectangle block leaves the [kmin,kmax] window");
  }
  Perm w = genflip_rect_perm(g.n, g.ci, g.cj, g.m, g.nn);
  Perm rho = rev_perm(kmin, kmax, g.n);
  Perm star_left = rho * g.w_left.inverse() * rho;
  Perm star_right = rho * g.w_right.inverse() * rho;
  for (int t = 0; t < trials; ++t) {
    EvalPoint pt = random_wiring_point(g.n, derive_seed(seed, static_cast<std::uint64_t>(t)), opt);
    EvalPoint rev = pt;
    for (int k = g.ci + 1; k <= g.ci + g.nn; ++k)
      rev.z[static_cast<std::size_t>(k - 1)] = pt.zat(2 * g.ci + g.nn + 1 - k);
    HeckeElem<Rat> lhs, rhs;
    try {
      lhs = yang_baxter_basis(w, pt);
      lhs = mul_right_T(lhs, g.w_up, pt.q);
      lhs = mul_right_T(lhs, g.w_right, pt.q);
      lhs = mul_left_T(g.w_down, lhs, pt.q);
      lhs = mul_left_T(g.w_left, lhs, pt.q);
      rhs = yang_baxter_basis(w, rev);
      rhs = mul_right_T(rhs, g.w_up, pt.q);
      rhs = mul_right_T(rhs, star_left, pt.q);
      rhs = mul_left_T(g.w_down, rhs, pt.q);
      rhs = mul_left_T(star_right, rhs, pt.q);
    } catch (const singular_point&) {
      ++out.points_skipped;
      continue;
    }
    ++out.points_used;
    BoundaryTable tl = boundary_table(lhs, g.ci, g.cj);
    BoundaryTable tr = boundary_table(rhs, g.ci, g.cj);
    auto value = [](const BoundaryTable& t, const BoundaryKey& k) {
      auto it = t.find(k);
      return it == t.end() ? Rat(0) : it->second;
    };
    auto check_pair = [&](const BoundaryCondition& h, const BoundaryCondition& v) {
      Rat a = value(tl, {h, v});
      Rat b = value(tr, {flip_180_at(h, g.ci, g.cj), v});
      if (a != b) {
        out.status = Status::FAIL;
        std::ostringstream os;
        os << "generalized flip fails at point " << t << ": lhs=" << rat_to_string(a)
           << " rhs=" << rat_to_string(b);
        out.detail = os.str();
        return false;
      }
      return true;
    };
    if (g.h && g.v) {
      if (!check_pair(*g.h, *g.v)) return out;
    } else {
      for (const auto& [key, coef] : tl)
        if (!check_pair(key.first, key.second)) return out;
      for (const auto& [key, coef] : tr)
        if (!check_pair(flip_180_at(key.first, g.ci, g.cj), key.second)) return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Admissible transformations

// A pair of finitely supported bijections of the positive integers, stored as
// permutations of their support windows (identity beyond).
struct Transformation {
  Perm phi_h, phi_v;

  static int apply(const Perm& p, int k) { return k <= p.n() ? p(k) : k; }
  int h(int k) const { return apply(phi_h, k); }
  int v(int k) const { return apply(phi_v, k); }
};

// image of [lo,hi]; nullopt when the image is not an interval
inline std::optional<std::pair<int, int>> map_interval(const Perm& phi, int lo, int hi) {
  int mn = 1 << 28, mx = 0;
  for (int k = lo; k <= hi; ++k) {
    int v = Transformation::apply(phi, k);
    mn = std::min(mn, v);
    mx = std::max(mx, v);
  }
  if (mx - mn != hi - lo) return std::nullopt;
  return std::make_pair(mn, mx);
}

// Transformed cut tuple together with a hosting domain check.
inline std::optional<std::vector<Cut>> check_admissible(const Transformation& phi,
                                                        const std::vector<Cut>& cuts) {
  std::vector<Cut> out;
  out.reserve(cuts.size());
  for (const Cut& c : cuts) {
    auto hi = map_interval(phi.phi_h, c.l, c.r);
    auto vi = map_interval(phi.phi_v, c.d, c.u);
    if (!hi || !vi) return std::nullopt;
    out.push_back(Cut{hi->first, vi->first, vi->second, hi->second});
  }
  if (!host_domain(out)) return std::nullopt;
  return out;
}

struct catalog_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class FlipKind { cps, global_H, global_V, local_H, local_V, double_H, double_V, H_shift, V_shift };

inline const char* flip_kind_name(FlipKind k) {
  switch (k) {
    case FlipKind::cps: return "cps";
    case FlipKind::global_H: return "global_H";
    case FlipKind::global_V: return "global_V";
    case FlipKind::local_H: return "local_H";
    case FlipKind::local_V: return "local_V";
    case FlipKind::double_H: return "double_H";
    case FlipKind::double_V: return "double_V";
    case FlipKind::H_shift: return "H_shift";
    default: return "V_shift";
  }
}

struct CatalogData {
  Cut cross;              // global flips: the cut crossed by every C_i
  int d = 0, u = 0;       // strip rows (H kinds) or columns (V kinds)
  int dp = 0, up = 0;     // inner strip for double flips / shifts
};

namespace detail {

inline bool strip_ok(int lo, int hi, int lo_i, int hi_i) {
  // each cut interval must be disjoint from, contained in, or containing [lo,hi]
  return !(lo_i < lo && lo <= hi_i && hi_i < hi) && !(lo < lo_i && lo_i <= hi && hi < hi_i);
}

struct StripSets {
  std::vector<int> inner, outer; // strictly contained / containing indices
};

inline StripSets strip_sets(int lo, int hi, const std::vector<std::pair<int, int>>& ivals,
                            const char* axis) {
  StripSets s;
  for (std::size_t i = 0; i < ivals.size(); ++i) {
    auto [a, b] = ivals[i];
    if (!strip_ok(lo, hi, a, b))
      throw catalog_error(std::string("not a ") + axis + " strip: cut " + std::to_string(i + 1) +
                          " straddles the strip boundary");
    if (lo <= a && b <= hi && !(a == lo && b == hi))
      s.inner.push_back(static_cast<int>(i));
    else if (a <= lo && hi <= b)
      s.outer.push_back(static_cast<int>(i));
  }
  return s;
}

/*
  Feasibility of the bridging interval: some [l,r] with [l,r] contained in
  every I-interval, equal to every J-interval, and containing every
  K-interval.  With J nonempty the interval is pinned; otherwise only the
  hull-of-K inside intersection-of-I condition matters.
*/
inline void check_bridge_interval(const std::vector<int>& J, const std::vector<int>& I,
                                  const std::vector<int>& K,
                                  const std::vector<std::pair<int, int>>& ivals, const char* what,
                                  const char* axis) {
  auto ival = [&](int i) { return ivals[static_cast<std::size_t>(i)]; };
  int l, r;
  if (!J.empty()) {
    std::tie(l, r) = ival(J.front());
    for (int j : J)
      if (ival(j) != std::make_pair(l, r))
        throw catalog_error(std::string(what) + ": middle cuts have unequal " + axis + " intervals");
  } else {
    if (K.empty()) {
      if (I.empty()) return;
      l = 0;
      r = 0;
      for (int i : I) l = std::max(l, ival(i).first);
      for (int i : I) r = (r == 0) ? ival(i).second : std::min(r, ival(i).second);
      if (l > r)
        throw catalog_error(std::string(what) + ": inner cuts have empty common " + axis +
                            " interval");
      r = l; // any point of the intersection serves as [l,r]
    } else {
      l = ival(K.front()).first;
      r = ival(K.front()).second;
      for (int k : K) {
        l = std::min(l, ival(k).first);
        r = std::max(r, ival(k).second);
      }
    }
  }
  for (int i : I)
    if (l < ival(i).first || r > ival(i).second)
      throw catalog_error(std::string(what) + ": bridging interval not contained in an inner cut's " +
                          axis + " interval");
  for (int k : K)
    if (ival(k).first < l || ival(k).second > r)
      throw catalog_error(std::string(what) + ": containing cut exceeds the bridging interval");
}

} // namespace detail

/*
  The catalog of strongly admissible transformations.  Each constructor checks
  the hypotheses of the corresponding statement and names the failed clause.
  Interval reversals compose right-to-left.
*/
inline Transformation elementary_flip_catalog(FlipKind kind, const CatalogData& data,
                                              const SkewDomain& dom, const std::vector<Cut>& cuts) {
  int minf = dom.max_col(), ninf = dom.max_row();
  std::vector<std::pair<int, int>> hiv, viv;
  for (const Cut& c : cuts) {
    if (!dom.cut_valid(c)) throw catalog_error("cut tuple invalid in the domain");
    hiv.emplace_back(c.l, c.r);
    viv.emplace_back(c.d, c.u);
  }
  auto rev = [](int l, int r, int window) { return rev_perm(l, r, window); };
  switch (kind) {
    case FlipKind::cps:
      return {rev(1, minf, minf), rev(1, ninf, ninf)};
    case FlipKind::global_H: {
      const Cut& c = data.cross;
      if (!dom.cut_valid(c)) throw catalog_error("global_H: crossing rectangle is not a cut");
      for (std::size_t i = 0; i < cuts.size(); ++i)
        if (!cuts_cross(c, cuts[i]))
          throw catalog_error("global_H: cut " + std::to_string(i + 1) + " does not cross C");
      return {rev(c.l, c.r, minf) * rev(1, minf, minf), rev(c.d, c.u, ninf)};
    }
    case FlipKind::global_V: {
      const Cut& c = data.cross;
      if (!dom.cut_valid(c)) throw catalog_error("global_V: crossing rectangle is not a cut");
      for (std::size_t i = 0; i < cuts.size(); ++i)
        if (!cuts_cross(c, cuts[i]))
          throw catalog_error("global_V: cut " + std::to_string(i + 1) + " does not cross C");
      return {rev(c.l, c.r, minf), rev(c.d, c.u, ninf) * rev(1, ninf, ninf)};
    }
    case FlipKind::local_H: {
      auto sets = detail::strip_sets(data.d, data.u, viv, "horizontal");
      if (!sets.inner.empty()) {
        auto [l0, r0] = hiv[static_cast<std::size_t>(sets.inner.front())];
        for (int j : sets.inner)
          if (hiv[static_cast<std::size_t>(j)] != std::make_pair(l0, r0))
            throw catalog_error("local_H: strictly inner cuts have unequal column intervals");
        for (int k : sets.outer)
          if (hiv[static_cast<std::size_t>(k)].first < l0 || hiv[static_cast<std::size_t>(k)].second > r0)
            throw catalog_error("local_H: containing cut exceeds the common column interval");
      }
      return {Perm::identity(minf), rev(data.d, data.u, ninf)};
    }
    case FlipKind::local_V: {
      auto sets = detail::strip_sets(data.d, data.u, hiv, "vertical");
      if (!sets.inner.empty()) {
        auto [d0, u0] = viv[static_cast<std::size_t>(sets.inner.front())];
        for (int j : sets.inner)
          if (viv[static_cast<std::size_t>(j)] != std::make_pair(d0, u0))
            throw catalog_error("local_V: strictly inner cuts have unequal row intervals");
        for (int k : sets.outer)
          if (viv[static_cast<std::size_t>(k)].first < d0 || viv[static_cast<std::size_t>(k)].second > u0)
            throw catalog_error("local_V: containing cut exceeds the common row interval");
      }
      return {rev(data.d, data.u, minf), Perm::identity(ninf)};
    }
    case FlipKind::double_H:
    case FlipKind::H_shift: {
      if (!(data.d <= data.dp && data.up <= data.u && (data.dp > data.d || data.up < data.u)))
        throw catalog_error("double_H: inner strip not strictly nested");
      auto outer_sets = detail::strip_sets(data.d, data.u, viv, "horizontal");
      detail::strip_sets(data.dp, data.up, viv, "horizontal"); // inner strip condition
      std::vector<char> in_inner(cuts.size(), 0);
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        auto [a, b] = viv[i];
        if (data.dp <= a && b <= data.up) in_inner[i] = 1;
      }
      std::vector<int> I, J, K = outer_sets.outer;
      for (std::size_t i = 0; i < cuts.size(); ++i)
        if (in_inner[i]) I.push_back(static_cast<int>(i));
      for (int j : outer_sets.inner)
        if (!in_inner[static_cast<std::size_t>(j)]) J.push_back(j);
      if (kind == FlipKind::H_shift && !J.empty())
        throw catalog_error("H_shift: middle family J must be empty");
      detail::check_bridge_interval(J, I, K, hiv, "double_H", "column");
      return {Perm::identity(minf), rev(data.dp, data.up, ninf) * rev(data.d, data.u, ninf)};
    }
    case FlipKind::double_V:
    case FlipKind::V_shift: {
      if (!(data.d <= data.dp && data.up <= data.u && (data.dp > data.d || data.up < data.u)))
        throw catalog_error("double_V: inner strip not strictly nested");
      auto outer_sets = detail::strip_sets(data.d, data.u, hiv, "vertical");
      detail::strip_sets(data.dp, data.up, hiv, "vertical"); // inner strip condition
      std::vector<char> in_inner(cuts.size(), 0);
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        auto [a, b] = hiv[i];
        if (data.dp <= a && b <= data.up) in_inner[i] = 1;
      }
      std::vector<int> I, J, K = outer_sets.outer;
      for (std::size_t i = 0; i < cuts.size(); ++i)
        if (in_inner[i]) I.push_back(static_cast<int>(i));
      for (int j : outer_sets.inner)
        if (!in_inner[static_cast<std::size_t>(j)]) J.push_back(j);
      if (kind == FlipKind::V_shift && !J.empty())
        throw catalog_error("V_shift: middle family J must be empty");
      detail::check_bridge_interval(J, I, K, viv, "double_V", "row");
      return {rev(data.dp, data.up, minf) * rev(data.d, data.u, minf), Perm::identity(ninf)};
    }
  }
  throw catalog_error("unknown transformation kind");
}

// ---------------------------------------------------------------------------
// The main theorem on instances

/*
  An instance carries both domains and cut tuples plus the variable
  assignment: x'_i = x_{xmap(i)}, y'_j = y_{ymap(j)} (identity beyond the
  stored windows).  The precondition checked before any evaluation is that the
  support conditions are satisfiable at all, which for interval supports is
  the equality of the clipped pairwise intersection-count matrices on each
  axis.  The supplied maps are then used as given, so an instance with
  compatible cut tuples but a wrong variable permutation FAILs rather than
  being rejected.
*/
struct MainInstance {
  SkewDomain dom_a, dom_b;
  std::vector<Cut> cuts_a, cuts_b;
  Perm xmap, ymap;
};

inline std::vector<std::vector<long>> interval_overlap_matrix(
    const std::vector<std::pair<int, int>>& ivals) {
  std::size_t m = ivals.size();
  std::vector<std::vector<long>> im(m, std::vector<long>(m, 0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      im[i][j] = std::max(0, std::min(ivals[i].second, ivals[j].second) -
                                 std::max(ivals[i].first, ivals[j].first) + 1);
  return im;
}

inline std::optional<std::string> main_instance_invalid_reason(const MainInstance& inst) {
  if (inst.cuts_a.size() != inst.cuts_b.size()) return "cut tuples have different lengths";
  for (std::size_t i = 0; i < inst.cuts_a.size(); ++i) {
    if (!inst.dom_a.cut_valid(inst.cuts_a[i]))
      return "cut " + std::to_string(i + 1) + " invalid in the first domain";
    if (!inst.dom_b.cut_valid(inst.cuts_b[i]))
      return "cut " + std::to_string(i + 1) + " invalid in the second domain";
  }
  std::vector<std::pair<int, int>> ha, hb, va, vb;
  for (const Cut& c : inst.cuts_a) {
    ha.emplace_back(c.l, c.r);
    va.emplace_back(c.d, c.u);
  }
  for (const Cut& c : inst.cuts_b) {
    hb.emplace_back(c.l, c.r);
    vb.emplace_back(c.d, c.u);
  }
  if (interval_overlap_matrix(ha) != interval_overlap_matrix(hb))
    return "column supports unsatisfiable: overlap matrices differ";
  if (interval_overlap_matrix(va) != interval_overlap_matrix(vb))
    return "row supports unsatisfiable: overlap matrices differ";
  return std::nullopt;
}

inline Verdict verify_main(const MainInstance& inst, int trials, std::uint64_t seed,
                           PointOptions opt = {}) {
  Verdict out;
  if (auto why = main_instance_invalid_reason(inst)) {
    out.status = Status::INVALID;
    out.detail = *why;
    return out;
  }
  int xw = std::max({inst.dom_a.max_col(), inst.dom_b.max_col(), inst.xmap.n()});
  int yw = std::max({inst.dom_a.max_row(), inst.dom_b.max_row(), inst.ymap.n()});
  for (int t = 0; t < trials; ++t) {
    SkewPoint base = random_skew_point(xw, yw, derive_seed(seed, static_cast<std::uint64_t>(t)), opt);
    SkewPoint prime;
    prime.q = base.q;
    for (int i = 1; i <= xw; ++i) prime.x.push_back(base.xat(Transformation::apply(inst.xmap, i)));
    for (int j = 1; j <= yw; ++j) prime.y.push_back(base.yat(Transformation::apply(inst.ymap, j)));
    JointTable ta, tb;
    try {
      ta = joint_distribution(inst.dom_a, inst.cuts_a, base);
      tb = joint_distribution(inst.dom_b, inst.cuts_b, prime);
    } catch (const singular_point&) {
      ++out.points_skipped;
      continue;
    }
    ++out.points_used;
    if (ta != tb) {
      out.status = Status::FAIL;
      out.witness = base;
      out.detail = "joint height tables differ at point " + std::to_string(t);
      return out;
    }
  }
  return out;
}

// Builds the full instance determined by a transformation: transformed cuts,
// a hosting domain for them, and the inverse variable maps.
inline std::optional<MainInstance> instance_from_transformation(const SkewDomain& dom,
                                                                const std::vector<Cut>& cuts,
                                                                const Transformation& phi) {
  auto cuts_b = check_admissible(phi, cuts);
  if (!cuts_b) return std::nullopt;
  auto dom_b = host_domain(*cuts_b);
  if (!dom_b) return std::nullopt;
  MainInstance inst;
  inst.dom_a = dom;
  inst.dom_b = *dom_b;
  inst.cuts_a = cuts;
  inst.cuts_b = *cuts_b;
  inst.xmap = phi.phi_h.inverse();
  inst.ymap = phi.phi_v.inverse();
  return inst;
}

} // namespace sixv
