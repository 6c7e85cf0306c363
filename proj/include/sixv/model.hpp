#pragma once

#include "sixv/hecke.hpp"
#include "sixv/parallel.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sixv {

/*
  Pipe dreams: one {crossing, elbow} tile per cell of a skew domain.  Tiles are
  stored in sweep order (rows bottom to top, columns left to right within a
  row), which is a linear extension of the up-right partial order on cells.

  A crossing lets both entering paths pass straight through, so their curves
  cross; an elbow bounces them.  The per-cell weight depends on the tile and
  on the parity of the number of previous crossings of the two entering
  colors:

      even:  crossing -> p_{i,j},     elbow -> 1 - p_{i,j}
      odd:   crossing -> q p_{i,j},   elbow -> 1 - q p_{i,j}
*/
struct PipeDream {
  std::vector<std::uint8_t> tiles; // 1 = crossing, 0 = elbow, in sweep order
};

struct CellInfo {
  int col = 0, row = 0;
  int color_left = 0, color_bottom = 0; // colors entering the cell
  bool even_parity = true;              // parity of previous crossings of the pair
  bool crossing = false;
};

/*
  Runs the up-right sweep of a tile assignment.  Tracks the color on every
  horizontal and vertical edge frontier plus a per-pair crossing parity table,
  calls the visitor on every cell, and returns the induced color permutation.
*/
template <class Visitor>
Perm sweep_pipe_dream(const SkewDomain& dom, const std::vector<std::uint8_t>& tiles, Visitor&& fn) {
  auto cells = dom.cells();
  if (tiles.size() != cells.size()) throw std::invalid_argument("tile count != cell count");
  int n = dom.n_steps();
  auto ps = dom.steps_of(dom.path_p());
  auto qs = dom.steps_of(dom.path_q());
  std::vector<int> left_color(static_cast<std::size_t>(dom.max_row()) + 1, 0);
  std::vector<int> bottom_color(static_cast<std::size_t>(dom.max_col()) + 1, 0);
  for (int t = 1; t <= n; ++t) {
    const auto& s = ps[static_cast<std::size_t>(t - 1)];
    (s.vertical ? left_color[static_cast<std::size_t>(s.line)]
                : bottom_color[static_cast<std::size_t>(s.line)]) = t;
  }
  std::vector<std::uint8_t> parity(static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(n + 1), 0);
  auto par_at = [&](int a, int b) -> std::uint8_t& {
    if (a > b) std::swap(a, b);
    return parity[static_cast<std::size_t>(a) * static_cast<std::size_t>(n + 1) +
                  static_cast<std::size_t>(b)];
  };
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    auto [i, j] = cells[idx];
    int cl = left_color[static_cast<std::size_t>(j)];
    int cb = bottom_color[static_cast<std::size_t>(i)];
    std::uint8_t& par = par_at(cl, cb);
    CellInfo info{i, j, cl, cb, par == 0, tiles[idx] != 0};
    fn(idx, info);
    if (tiles[idx]) {
      par ^= 1; // paths cross: left keeps moving right, bottom keeps moving up
    } else {
      left_color[static_cast<std::size_t>(j)] = cb;
      bottom_color[static_cast<std::size_t>(i)] = cl;
    }
  }
  std::vector<int> img(static_cast<std::size_t>(n), 0);
  for (int t = 1; t <= n; ++t) {
    const auto& s = qs[static_cast<std::size_t>(t - 1)];
    int color = s.vertical ? left_color[static_cast<std::size_t>(s.line)]
                           : bottom_color[static_cast<std::size_t>(s.line)];
    img[static_cast<std::size_t>(color - 1)] = t;
  }
  return Perm(std::move(img));
}

inline Perm color_permutation(const SkewDomain& dom, const PipeDream& pd) {
  return sweep_pipe_dream(dom, pd.tiles, [](std::size_t, const CellInfo&) {});
}

// Per-cell crossing parameters p_{i,j} = (y_j - x_i)/(y_j - q x_i), sweep order.
inline std::vector<Rat> cell_params(const SkewDomain& dom, const SkewPoint& pt) {
  std::vector<Rat> out;
  for (auto [i, j] : dom.cells()) out.push_back(p_param(pt, i, j));
  return out;
}

inline Rat pipe_dream_weight(const SkewDomain& dom, const PipeDream& pd, const SkewPoint& pt) {
  std::vector<Rat> pc = cell_params(dom, pt);
  Rat w(1);
  sweep_pipe_dream(dom, pd.tiles, [&](std::size_t idx, const CellInfo& c) {
    const Rat& p = pc[idx];
    if (c.crossing)
      w *= c.even_parity ? p : pt.q * p;
    else
      w *= c.even_parity ? Rat(1) - p : Rat(1) - pt.q * p;
  });
  return w;
}

enum class DistMethod { hecke, brute_force };

/*
  Exact distribution of the color permutation.  The Hecke route multiplies one
  R-factor per cell in sweep order, with the generator index given by the cell
  content M + row - col; the brute-force route sums pipe-dream weights over
  all 2^{#cells} tile assignments and exists as an independent oracle.
*/
inline HeckeElem<Rat> exact_distribution(const SkewDomain& dom, const SkewPoint& pt,
                                         DistMethod method = DistMethod::hecke,
                                         int brute_cap = 20) {
  auto cells = dom.cells();
  if (method == DistMethod::hecke) {
    HeckeElem<Rat> y = HeckeElem<Rat>::unit(dom.n_steps());
    for (auto [i, j] : cells) y = mul_right_R(y, dom.max_col() + j - i, p_param(pt, i, j), pt.q);
    return y;
  }
  int nc = static_cast<int>(cells.size());
  if (nc > brute_cap) throw std::invalid_argument("cell count exceeds brute-force cap");
  std::vector<Rat> pc = cell_params(dom, pt);
  std::uint64_t total = 1ULL << nc;
  HeckeElem<Rat> out;
  std::vector<std::uint8_t> tiles(static_cast<std::size_t>(nc), 0);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (int b = 0; b < nc; ++b) tiles[static_cast<std::size_t>(b)] = (mask >> b) & 1u;
    Rat w(1);
    Perm pi = sweep_pipe_dream(dom, tiles, [&](std::size_t idx, const CellInfo& c) {
      const Rat& p = pc[idx];
      if (c.crossing)
        w *= c.even_parity ? p : pt.q * p;
      else
        w *= c.even_parity ? Rat(1) - p : Rat(1) - pt.q * p;
    });
    out.add(pi, w);
  }
  return out;
}

// Ht_pi(ci,cj) = #{ c > ci : pi(c) <= cj }.
inline int height(const Perm& pi, int ci, int cj) {
  int h = 0;
  for (int c = ci + 1; c <= pi.n(); ++c)
    if (pi(c) <= cj) ++h;
  return h;
}

using HeightVector = std::vector<int>;
using JointTable = std::map<HeightVector, Rat>;

inline HeightVector height_vector(const Perm& pi, const std::vector<std::pair<int, int>>& levels) {
  HeightVector h;
  h.reserve(levels.size());
  for (auto [ci, cj] : levels) h.push_back(height(pi, ci, cj));
  return h;
}

// Pushforward of the exact distribution through the height functions of the cuts.
inline JointTable joint_distribution(const SkewDomain& dom, const std::vector<Cut>& cuts,
                                     const SkewPoint& pt) {
  std::vector<std::pair<int, int>> levels;
  for (const Cut& c : cuts) levels.push_back(dom.cutoff_levels(c));
  HeckeElem<Rat> dist = exact_distribution(dom, pt);
  JointTable table;
  for (const auto& [pi, coef] : dist.terms()) {
    auto [it, inserted] = table.emplace(height_vector(pi, levels), coef);
    if (!inserted) it->second += coef;
  }
  for (auto it = table.begin(); it != table.end();)
    it = it->second == 0 ? table.erase(it) : std::next(it);
  return table;
}

/*
  Relevant cells of a pipe dream with respect to a cut tuple: C_k involves a
  cell when the cell lies in the cut rectangle and the cut's color cutoff
  level separates the two entering colors.  Flipping any other cell changes
  neither the heights nor the weights of the relevant cells.
*/
inline std::vector<std::pair<int, int>> relevant_cells(const SkewDomain& dom, const PipeDream& pd,
                                                       const std::vector<Cut>& cuts) {
  std::vector<std::pair<int, int>> levels;
  for (const Cut& c : cuts) levels.push_back(dom.cutoff_levels(c));
  std::vector<std::pair<int, int>> rel;
  sweep_pipe_dream(dom, pd.tiles, [&](std::size_t, const CellInfo& info) {
    int c1 = std::min(info.color_left, info.color_bottom);
    int c2 = std::max(info.color_left, info.color_bottom);
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const Cut& c = cuts[k];
      int ci = levels[k].first;
      if (info.col >= c.l && info.col <= c.r && info.row >= c.d && info.row <= c.u &&
          ci >= c1 && ci <= c2 - 1) {
        rel.emplace_back(info.col, info.row);
        return;
      }
    }
  });
  return rel;
}

/*
  Draws one configuration by the up-right sweep: at each cell the pair crosses
  with probability p (even parity) or qp (odd parity).  Bernoulli draws compare
  a 63-bit uniform against the exact rational probability.
*/
inline PipeDream sample_with_params(const SkewDomain& dom, const std::vector<Rat>& pc, const Rat& q,
                                    std::uint64_t seed) {
  auto cells = dom.cells();
  Prng rng(derive_seed(seed, 0x73616d70));
  PipeDream pd;
  pd.tiles.assign(cells.size(), 0);
  // two passes per cell would re-draw; instead decide tiles inside one sweep
  std::vector<std::uint8_t>& tiles = pd.tiles;
  // the visitor runs before the sweep reads the tile, so deciding it here is safe
  sweep_pipe_dream(dom, tiles, [&](std::size_t idx, const CellInfo& c) {
    Rat p = c.even_parity ? pc[idx] : q * pc[idx];
    Int num = numerator(p), den = denominator(p);
    Int u = Int(rng.next_u63()) * den;
    tiles[idx] = u < (num << 63) ? 1 : 0;
  });
  return pd;
}

inline PipeDream sample(const SkewDomain& dom, const SkewPoint& pt, std::uint64_t seed) {
  if (!(pt.q > 0 && pt.q < 1)) throw std::invalid_argument("sample requires 0 < q < 1");
  for (const Rat& x : pt.x)
    for (const Rat& y : pt.y)
      if (!(x > 0 && x < y)) throw std::invalid_argument("sample requires 0 < x_i < y_j");
  return sample_with_params(dom, cell_params(dom, pt), pt.q, seed);
}

inline std::string pipe_dream_to_string(const SkewDomain& dom, const PipeDream& pd) {
  auto cells = dom.cells();
  std::string out;
  int row = 0;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (cells[idx].second != row) {
      if (row != 0) out += '\n';
      row = cells[idx].second;
    }
    out += pd.tiles[idx] ? 'X' : 'E';
  }
  return out;
}

} // namespace sixv
