#pragma once

#include "sixv/perm.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sixv {

struct Cut {
  int l = 0, d = 0, u = 0, r = 0;

  bool operator==(const Cut& o) const { return l == o.l && d == o.d && u == o.u && r == o.r; }
  bool operator!=(const Cut& o) const { return !(*this == o); }
  bool operator<(const Cut& o) const {
    return std::tie(l, d, u, r) < std::tie(o.l, o.d, o.u, o.r);
  }
};

// Crossing in the sense of nested horizontal/vertical projections; equal cuts
// do not cross by convention.
inline bool cuts_cross(const Cut& a, const Cut& b) {
  if (a == b) return false;
  auto contains = [](int lo1, int hi1, int lo2, int hi2) { return lo1 <= lo2 && hi2 <= hi1; };
  return (contains(b.l, b.r, a.l, a.r) && contains(a.d, a.u, b.d, b.u)) ||
         (contains(a.l, a.r, b.l, b.r) && contains(b.d, b.u, a.d, a.u));
}

/*
  A skew domain is a pair (P,Q) of up-left lattice paths with common start and
  end points, P weakly below Q.  Paths are encoded as strings over {U,L} read
  from the common start.  We anchor the start at (#L-steps, 0), so the cells of
  the domain have positive Cartesian coordinates (column, row).

  Column i carries the cell rows [lowerq(i)+1, upper(i)], where lower(i) and
  upper(i) are the heights at which P and Q cross column i; both profiles are
  non-increasing in i.  Step t of a path is the left edge of a cell when
  vertical ('U', located in a row) and the bottom edge when horizontal ('L',
  located in a column).
*/
class SkewDomain {
public:
  SkewDomain() = default;
  SkewDomain(std::string path_p, std::string path_q) : p_(std::move(path_p)), q_(std::move(path_q)) {
    if (p_.size() != q_.size()) throw std::invalid_argument("paths differ in length");
    long up_p = 0, up_q = 0;
    for (std::size_t t = 0; t < p_.size(); ++t) {
      char cp = p_[t], cq = q_[t];
      if ((cp != 'U' && cp != 'L') || (cq != 'U' && cq != 'L'))
        throw std::invalid_argument("path step not in {U,L}");
      up_p += cp == 'U';
      up_q += cq == 'U';
      if (up_p > up_q) throw std::invalid_argument("P not weakly below Q");
    }
    if (up_p != up_q) throw std::invalid_argument("paths have different endpoints");
    rows_ = static_cast<int>(up_p);
    cols_ = static_cast<int>(p_.size()) - rows_;
    lower_ = profile(p_);
    upper_ = profile(q_);
  }

  static SkewDomain rectangle(int m, int n) {
    return SkewDomain(std::string(static_cast<std::size_t>(m), 'L') +
                          std::string(static_cast<std::size_t>(n), 'U'),
                      std::string(static_cast<std::size_t>(n), 'U') +
                          std::string(static_cast<std::size_t>(m), 'L'));
  }

  const std::string& path_p() const { return p_; }
  const std::string& path_q() const { return q_; }
  int n_steps() const { return cols_ + rows_; }
  int max_col() const { return cols_; }
  int max_row() const { return rows_; }
  int lower(int col) const { return lower_[static_cast<std::size_t>(col - 1)]; }
  int upper(int col) const { return upper_[static_cast<std::size_t>(col - 1)]; }

  bool is_cell(int i, int j) const {
    return i >= 1 && i <= cols_ && j >= lower(i) + 1 && j <= upper(i);
  }

  int cell_count() const {
    int c = 0;
    for (int i = 1; i <= cols_; ++i) c += upper(i) - lower(i);
    return c;
  }

  // cells in sweep order: rows bottom to top, columns left to right inside a row
  std::vector<std::pair<int, int>> cells() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 1; j <= rows_; ++j)
      for (int i = 1; i <= cols_; ++i)
        if (is_cell(i, j)) out.emplace_back(i, j);
    return out;
  }

  struct Step {
    bool vertical = false;
    int line = 0; // row for vertical steps, column for horizontal ones
  };

  std::vector<Step> steps_of(const std::string& path) const {
    std::vector<Step> out;
    int x = cols_, y = 0;
    for (char c : path) {
      if (c == 'U') {
        out.push_back({true, y + 1});
        ++y;
      } else {
        out.push_back({false, x});
        --x;
      }
    }
    return out;
  }

  bool cut_valid(const Cut& c) const {
    if (c.l < 1 || c.d < 1 || c.l > c.r || c.d > c.u) return false;
    if (!is_cell(c.l, c.d) || !is_cell(c.r, c.u)) return false;
    if (is_cell(c.l - 1, c.d - 1) || is_cell(c.r + 1, c.u + 1)) return false;
    return true;
  }

  // Color cutoff levels: the number of P-steps before the bottom-left corner
  // of cell (l,d) and of Q-steps before the top-right corner of cell (r,u).
  std::pair<int, int> cutoff_levels(const Cut& c) const {
    if (!cut_valid(c)) throw std::invalid_argument("invalid cut");
    int ci = cols_ + c.d - c.l;
    int cj = cols_ - c.r + c.u;
    return {ci, cj};
  }

  std::vector<Cut> enumerate_cuts() const {
    std::vector<Cut> out;
    for (int l = 1; l <= cols_; ++l)
      for (int r = l; r <= cols_; ++r)
        for (int d = 1; d <= rows_; ++d)
          for (int u = d; u <= rows_; ++u) {
            Cut c{l, d, u, r};
            if (cut_valid(c)) out.push_back(c);
          }
    return out;
  }

  bool operator==(const SkewDomain& o) const { return p_ == o.p_ && q_ == o.q_; }

private:
  // height of the path's L-step crossing each column
  std::vector<int> profile(const std::string& path) const {
    std::vector<int> h(static_cast<std::size_t>(cols_), 0);
    int x = cols_, y = 0;
    for (char c : path) {
      if (c == 'U')
        ++y;
      else
        h[static_cast<std::size_t>(--x)] = y; // step crosses column x+1 at height y
    }
    return h;
  }

  std::string p_, q_;
  int cols_ = 0, rows_ = 0;
  std::vector<int> lower_, upper_;
};

// A rapidity slot: the wiring variable z_i points at a column or row variable.
struct RapRef {
  bool is_row = false;
  int index = 0; // column index for x, row index for y
};

struct WiringData {
  Perm w;                // the permutation w^{P,Q} matching in-steps to out-steps
  std::vector<RapRef> z; // z_i in terms of x/y
};

// Match each P-step with the unique Q-step in the same row/column.
inline WiringData skew_to_wiring(const SkewDomain& dom) {
  auto ps = dom.steps_of(dom.path_p());
  auto qs = dom.steps_of(dom.path_q());
  int n = dom.n_steps();
  std::vector<int> row_q(static_cast<std::size_t>(dom.max_row()) + 1, 0);
  std::vector<int> col_q(static_cast<std::size_t>(dom.max_col()) + 1, 0);
  for (int t = 1; t <= n; ++t) {
    const auto& s = qs[static_cast<std::size_t>(t - 1)];
    auto& slot = s.vertical ? row_q[static_cast<std::size_t>(s.line)]
                            : col_q[static_cast<std::size_t>(s.line)];
    if (slot != 0) throw std::invalid_argument("malformed path: duplicate step line");
    slot = t;
  }
  WiringData out;
  std::vector<int> img(static_cast<std::size_t>(n));
  out.z.resize(static_cast<std::size_t>(n));
  for (int t = 1; t <= n; ++t) {
    const auto& s = ps[static_cast<std::size_t>(t - 1)];
    int j = s.vertical ? row_q[static_cast<std::size_t>(s.line)]
                       : col_q[static_cast<std::size_t>(s.line)];
    if (j == 0) throw std::invalid_argument("malformed path: unmatched step");
    img[static_cast<std::size_t>(t - 1)] = j;
    out.z[static_cast<std::size_t>(t - 1)] = {s.vertical, s.line};
  }
  out.w = Perm(std::move(img));
  return out;
}

/*
  Boundary conditions: a set of integer pairs with distinct first and distinct
  second coordinates, stored sorted by first coordinate so that set equality is
  plain equality.
*/
class BoundaryCondition {
public:
  BoundaryCondition() = default;
  explicit BoundaryCondition(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    for (std::size_t t = 1; t < pairs_.size(); ++t)
      if (pairs_[t].first == pairs_[t - 1].first)
        throw std::invalid_argument("repeated first coordinate in boundary condition");
    std::vector<int> seconds;
    for (auto& pr : pairs_) seconds.push_back(pr.second);
    std::sort(seconds.begin(), seconds.end());
    if (std::adjacent_find(seconds.begin(), seconds.end()) != seconds.end())
      throw std::invalid_argument("repeated second coordinate in boundary condition");
  }

  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  bool operator==(const BoundaryCondition& o) const { return pairs_ == o.pairs_; }
  bool operator!=(const BoundaryCondition& o) const { return pairs_ != o.pairs_; }
  bool operator<(const BoundaryCondition& o) const { return pairs_ < o.pairs_; }

private:
  std::vector<std::pair<int, int>> pairs_;
};

// H^{i,j}_pi and V^{i,j}_pi of a permutation at cutoff levels (ci, cj).
inline BoundaryCondition boundary_h(const Perm& pi, int ci, int cj) {
  std::vector<std::pair<int, int>> v;
  for (int i = ci + 1; i <= pi.n(); ++i)
    if (pi(i) <= cj) v.emplace_back(i, pi(i));
  return BoundaryCondition(std::move(v));
}

inline BoundaryCondition boundary_v(const Perm& pi, int ci, int cj) {
  std::vector<std::pair<int, int>> v;
  for (int i = 1; i <= ci; ++i)
    if (pi(i) > cj) v.emplace_back(i, pi(i));
  return BoundaryCondition(std::move(v));
}

// Strict variants, with both inequalities strong.
inline BoundaryCondition boundary_h_strict(const Perm& pi, int alpha, int delta) {
  std::vector<std::pair<int, int>> v;
  for (int i = alpha + 1; i <= pi.n(); ++i)
    if (pi(i) < delta) v.emplace_back(i, pi(i));
  return BoundaryCondition(std::move(v));
}

inline BoundaryCondition boundary_v_strict(const Perm& pi, int alpha, int delta) {
  std::vector<std::pair<int, int>> v;
  for (int i = 1; i < alpha; ++i)
    if (pi(i) > delta) v.emplace_back(i, pi(i));
  return BoundaryCondition(std::move(v));
}

// (l,r) -> (total+1-r, total+1-l); an involution.
inline BoundaryCondition flip_180(const BoundaryCondition& h, int total) {
  std::vector<std::pair<int, int>> v;
  for (auto [l, r] : h.pairs()) {
    if (l < 1 || l > total || r < 1 || r > total)
      throw std::invalid_argument("boundary pair coordinate out of [1,n]");
    v.emplace_back(total + 1 - r, total + 1 - l);
  }
  return BoundaryCondition(std::move(v));
}

/*
  Minimal skew domain hosting a cut tuple, if one exists.

  Writing lo/hi for the column profiles, a cut (l,d,u,r) forces
    lo(l) <= d-1,  lo(l-1) >= d-1 (when l,d >= 2),
    hi(r) >= u,    hi(r+1) <= u   (when r < #columns),
  and both profiles are non-increasing.  Taking the number of columns to be
  max r_i only removes constraints, so the pointwise-minimal non-increasing
  profiles decide feasibility.
*/
inline std::optional<SkewDomain> host_domain(const std::vector<Cut>& cuts) {
  if (cuts.empty()) return SkewDomain("", "");
  int mtot = 0;
  for (const Cut& c : cuts) {
    if (c.l < 1 || c.d < 1 || c.l > c.r || c.d > c.u) return std::nullopt;
    mtot = std::max(mtot, c.r);
  }
  const int none_lo = -1, none_hi = 1 << 20;
  std::vector<int> lo_min(static_cast<std::size_t>(mtot) + 2, none_lo);
  std::vector<int> lo_max(static_cast<std::size_t>(mtot) + 2, none_hi);
  std::vector<int> hi_min(static_cast<std::size_t>(mtot) + 2, none_lo);
  std::vector<int> hi_max(static_cast<std::size_t>(mtot) + 2, none_hi);
  for (const Cut& c : cuts) {
    auto at = [&](std::vector<int>& v, int i) -> int& { return v[static_cast<std::size_t>(i)]; };
    at(lo_max, c.l) = std::min(at(lo_max, c.l), c.d - 1);
    if (c.l >= 2 && c.d >= 2) at(lo_min, c.l - 1) = std::max(at(lo_min, c.l - 1), c.d - 1);
    at(hi_min, c.r) = std::max(at(hi_min, c.r), c.u);
    if (c.r + 1 <= mtot) at(hi_max, c.r + 1) = std::min(at(hi_max, c.r + 1), c.u);
  }
  std::vector<int> lo(static_cast<std::size_t>(mtot) + 1, 0), hi(static_cast<std::size_t>(mtot) + 1, 0);
  int run = 0;
  for (int i = mtot; i >= 1; --i) {
    run = std::max(run, std::max(0, lo_min[static_cast<std::size_t>(i)]));
    if (run > lo_max[static_cast<std::size_t>(i)]) return std::nullopt;
    lo[static_cast<std::size_t>(i)] = run;
  }
  run = 0;
  for (int i = mtot; i >= 1; --i) {
    run = std::max({run, hi_min[static_cast<std::size_t>(i)], lo[static_cast<std::size_t>(i)]});
    if (run > hi_max[static_cast<std::size_t>(i)]) return std::nullopt;
    hi[static_cast<std::size_t>(i)] = run;
  }
  int ntot = hi[1];
  std::string p, q;
  int y = 0;
  for (int i = mtot; i >= 1; --i) {
    p += std::string(static_cast<std::size_t>(lo[static_cast<std::size_t>(i)] - y), 'U');
    y = lo[static_cast<std::size_t>(i)];
    p += 'L';
  }
  p += std::string(static_cast<std::size_t>(ntot - y), 'U');
  y = 0;
  for (int i = mtot; i >= 1; --i) {
    q += std::string(static_cast<std::size_t>(hi[static_cast<std::size_t>(i)] - y), 'U');
    y = hi[static_cast<std::size_t>(i)];
    q += 'L';
  }
  q += std::string(static_cast<std::size_t>(ntot - y), 'U');
  try {
    SkewDomain dom(p, q);
    for (const Cut& c : cuts)
      if (!dom.cut_valid(c)) return std::nullopt;
    return dom;
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

} // namespace sixv
