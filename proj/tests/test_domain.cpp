#include <catch2/catch_amalgamated.hpp>

#include "sixv/domain.hpp"
#include "sixv/rng.hpp"

using namespace sixv;

namespace {

// random skew domain inside a small bounding box
SkewDomain random_domain(Prng& rng, int max_side = 4) {
  for (;;) {
    int m = static_cast<int>(rng.next_in(1, max_side));
    int n = static_cast<int>(rng.next_in(1, max_side));
    std::vector<int> lo(static_cast<std::size_t>(m)), hi(static_cast<std::size_t>(m));
    int a = 0, b = 0;
    for (int i = m; i >= 1; --i) { // profiles are non-increasing in the column
      a = std::max(a, static_cast<int>(rng.next_in(0, n)));
      lo[static_cast<std::size_t>(i - 1)] = a;
    }
    for (int i = m; i >= 1; --i) {
      b = std::max({b, static_cast<int>(rng.next_in(0, n)), lo[static_cast<std::size_t>(i - 1)]});
      hi[static_cast<std::size_t>(i - 1)] = b;
    }
    int ntot = hi[0];
    std::string p, q;
    int y = 0;
    for (int i = m; i >= 1; --i) {
      p += std::string(static_cast<std::size_t>(lo[static_cast<std::size_t>(i - 1)] - y), 'U');
      y = lo[static_cast<std::size_t>(i - 1)];
      p += 'L';
    }
    p += std::string(static_cast<std::size_t>(ntot - y), 'U');
    y = 0;
    for (int i = m; i >= 1; --i) {
      q += std::string(static_cast<std::size_t>(hi[static_cast<std::size_t>(i - 1)] - y), 'U');
      y = hi[static_cast<std::size_t>(i - 1)];
      q += 'L';
    }
    q += std::string(static_cast<std::size_t>(ntot - y), 'U');
    SkewDomain dom(p, q);
    if (dom.cell_count() >= 1) return dom;
  }
}

// 2D orientation of integer points
long orient(long ax, long ay, long bx, long by, long cx, long cy) {
  long v = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
  return v > 0 ? 1 : v < 0 ? -1 : 0;
}

bool on_segment(long ax, long ay, long bx, long by, long px, long py) {
  return orient(ax, ay, bx, by, px, py) == 0 && std::min(ax, bx) <= px && px <= std::max(ax, bx) &&
         std::min(ay, by) <= py && py <= std::max(ay, by);
}

// exact closed-segment intersection test; the independent oracle for crossing
bool segments_intersect(const Cut& c1, const Cut& c2) {
  long ax = c1.l, ay = c1.d, bx = c1.r, by = c1.u;
  long cx = c2.l, cy = c2.d, dx = c2.r, dy = c2.u;
  long o1 = orient(ax, ay, bx, by, cx, cy), o2 = orient(ax, ay, bx, by, dx, dy);
  long o3 = orient(cx, cy, dx, dy, ax, ay), o4 = orient(cx, cy, dx, dy, bx, by);
  if (o1 != o2 && o3 != o4) return true;
  return on_segment(ax, ay, bx, by, cx, cy) || on_segment(ax, ay, bx, by, dx, dy) ||
         on_segment(cx, cy, dx, dy, ax, ay) || on_segment(cx, cy, dx, dy, bx, by);
}

// step-walk oracle for the cutoff levels: count path steps before the corner
int walk_to_corner(const std::string& path, int cols, int corner_x, int corner_y) {
  int x = cols, y = 0, t = 0;
  for (char c : path) {
    if (x == corner_x && y == corner_y) return t;
    ++t;
    if (c == 'U')
      ++y;
    else
      --x;
  }
  REQUIRE((x == corner_x && y == corner_y));
  return t;
}

} // namespace

TEST_CASE("skew domain validation") {
  CHECK_THROWS_AS(SkewDomain("LU", "ULL"), std::invalid_argument);  // lengths differ
  CHECK_THROWS_AS(SkewDomain("UL", "LU"), std::invalid_argument);   // P above Q
  CHECK_THROWS_AS(SkewDomain("LL", "LU"), std::invalid_argument);   // endpoints differ
  CHECK_THROWS_AS(SkewDomain("LX", "UL"), std::invalid_argument);   // alphabet
  SkewDomain empty("ULUL", "ULUL");
  CHECK(empty.cell_count() == 0);
  CHECK(skew_to_wiring(empty).w.is_identity());
}

TEST_CASE("rectangle geometry and wiring data") {
  SkewDomain rect = SkewDomain::rectangle(2, 3);
  CHECK(rect.cell_count() == 6);
  WiringData wd = skew_to_wiring(rect);
  CHECK(wd.w == grassmannian_perm(2, 3));
  // z = (x_M, ..., x_1, y_1, ..., y_N)
  REQUIRE(wd.z.size() == 5);
  CHECK((!wd.z[0].is_row && wd.z[0].index == 2));
  CHECK((!wd.z[1].is_row && wd.z[1].index == 1));
  CHECK((wd.z[2].is_row && wd.z[2].index == 1));
  CHECK((wd.z[4].is_row && wd.z[4].index == 3));
}

TEST_CASE("wiring matches an independent row/column scan on random domains") {
  Prng rng(23);
  for (int t = 0; t < 30; ++t) {
    SkewDomain dom = random_domain(rng);
    WiringData wd = skew_to_wiring(dom);
    auto ps = dom.steps_of(dom.path_p());
    auto qs = dom.steps_of(dom.path_q());
    for (int i = 1; i <= dom.n_steps(); ++i) {
      const auto& s = ps[static_cast<std::size_t>(i - 1)];
      int match = 0;
      for (int j = 1; j <= dom.n_steps(); ++j) {
        const auto& o = qs[static_cast<std::size_t>(j - 1)];
        if (o.vertical == s.vertical && o.line == s.line) match = j;
      }
      CHECK(wd.w(i) == match);
      CHECK(wd.z[static_cast<std::size_t>(i - 1)].is_row == s.vertical);
      CHECK(wd.z[static_cast<std::size_t>(i - 1)].index == s.line);
    }
  }
}

TEST_CASE("cutoff levels via the corner-walk oracle") {
  SkewDomain rect = SkewDomain::rectangle(3, 4);
  auto [ci, cj] = rect.cutoff_levels(Cut{1, 1, 4, 3});
  CHECK(ci == 3);
  CHECK(cj == 4);
  // (2,2) has the cell (1,1) below-left of it, so it cannot start a cut
  CHECK_THROWS_AS(rect.cutoff_levels(Cut{2, 2, 3, 3}), std::invalid_argument);

  Prng rng(31);
  for (int t = 0; t < 40; ++t) {
    SkewDomain dom = random_domain(rng);
    auto cuts = dom.enumerate_cuts();
    if (cuts.empty()) continue;
    const Cut c = cuts[rng.next_below(cuts.size())];
    auto [i, j] = dom.cutoff_levels(c);
    CHECK(i == walk_to_corner(dom.path_p(), dom.max_col(), c.l - 1, c.d - 1));
    CHECK(j == walk_to_corner(dom.path_q(), dom.max_col(), c.r, c.u));
    CHECK((1 <= i && i <= dom.n_steps() - 1));
    CHECK((1 <= j && j <= dom.n_steps() - 1));
  }
}

TEST_CASE("cut crossing agrees with exact segment intersection") {
  CHECK_FALSE(cuts_cross(Cut{1, 3, 9, 7}, Cut{4, 5, 6, 7}));
  Cut c{2, 1, 3, 2};
  CHECK_FALSE(cuts_cross(c, c)); // a cut never crosses itself
  Prng rng(37);
  int crossings = 0;
  for (int t = 0; t < 60; ++t) {
    SkewDomain dom = random_domain(rng);
    auto cuts = dom.enumerate_cuts();
    if (cuts.size() < 2) continue;
    const Cut a = cuts[rng.next_below(cuts.size())];
    const Cut b = cuts[rng.next_below(cuts.size())];
    CHECK(cuts_cross(a, b) == cuts_cross(b, a));
    if (a != b) {
      CHECK(cuts_cross(a, b) == segments_intersect(a, b));
      crossings += cuts_cross(a, b);
    }
  }
  CHECK(crossings > 0); // the sample actually exercised both branches
}

TEST_CASE("boundary conditions and the 180-degree rotation") {
  BoundaryCondition h({{6, 6}, {7, 4}, {9, 5}, {10, 7}});
  BoundaryCondition expect({{5, 2}, {6, 6}, {7, 3}, {8, 5}});
  CHECK(flip_180(h, 11) == expect);
  CHECK(flip_180(flip_180(h, 11), 11) == h); // involution
  CHECK(flip_180(BoundaryCondition(), 5) == BoundaryCondition());
  CHECK(flip_180(BoundaryCondition({{3, 2}, {5, 3}}), 5) ==
        BoundaryCondition({{4, 3}, {3, 1}}));
  CHECK_THROWS_AS(flip_180(h, 9), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryCondition({{1, 2}, {1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(BoundaryCondition({{1, 2}, {3, 2}}), std::invalid_argument);

  Prng rng(43);
  for (int t = 0; t < 30; ++t) { // involution property on random data
    std::vector<std::pair<int, int>> pairs;
    int n = 9;
    std::vector<int> fs = {1, 3, 5, 7}, ss = {2, 4, 6, 8};
    for (std::size_t i = 0; i < fs.size(); ++i)
      if (rng.next_below(2)) pairs.emplace_back(fs[i], ss[i]);
    BoundaryCondition b(pairs);
    CHECK(flip_180(flip_180(b, n), n) == b);
  }
}

TEST_CASE("host_domain finds domains exactly when they exist") {
  Prng rng(53);
  for (int t = 0; t < 40; ++t) {
    SkewDomain dom = random_domain(rng);
    auto cuts = dom.enumerate_cuts();
    if (cuts.empty()) continue;
    std::vector<Cut> tuple;
    for (int k = 0; k < 3; ++k) tuple.push_back(cuts[rng.next_below(cuts.size())]);
    auto host = host_domain(tuple);
    REQUIRE(host.has_value());
    for (const Cut& c : tuple) CHECK(host->cut_valid(c));
  }
  // (1,2,3,3) forces cell (1,2); (2,3,3,4) forbids it
  CHECK_FALSE(host_domain({Cut{1, 2, 3, 3}, Cut{2, 3, 3, 4}}).has_value());
  // degenerate interior is rejected at validity level: (l,d) must be a cell
  CHECK_FALSE(SkewDomain::rectangle(2, 2).cut_valid(Cut{0, 1, 2, 2}));
}
