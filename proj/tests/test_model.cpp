#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "sixv/model.hpp"

#include <cmath>

using namespace sixv;

TEST_CASE("pipe dream weights") {
  SkewDomain rect = SkewDomain::rectangle(2, 2);
  SkewPoint pt = random_skew_point(2, 2, 3);
  // all elbows: no pair ever crosses, weight is the product of (1 - p_{i,j})
  PipeDream pd;
  pd.tiles.assign(4, 0);
  Rat expect(1);
  for (auto [i, j] : rect.cells()) expect *= Rat(1) - p_param(pt, i, j);
  CHECK(pipe_dream_weight(rect, pd, pt) == expect);
  // weights over all configurations sum to 1, also on non-rectangular domains
  for (const SkewDomain& dom : {rect, SkewDomain::rectangle(3, 3), SkewDomain("LULU", "ULUL")}) {
    SkewPoint p2 = random_skew_point(dom.max_col(), dom.max_row(), 5);
    Rat total(0);
    int nc = dom.cell_count();
    for (std::uint64_t mask = 0; mask < (1ULL << nc); ++mask) {
      PipeDream cfg;
      for (int b = 0; b < nc; ++b) cfg.tiles.push_back((mask >> b) & 1u);
      total += pipe_dream_weight(dom, cfg, p2);
    }
    CHECK(total == 1);
  }
}

TEST_CASE("exact distribution: the two methods agree") {
  SkewDomain empty("UL", "UL");
  auto point_mass = exact_distribution(empty, SkewPoint{Rat(1, 2), {}, {}});
  CHECK(point_mass == HeckeElem<Rat>::unit(2));

  // single cell: p T_{w^{1,1}} + (1-p) T_id
  SkewDomain one = SkewDomain::rectangle(1, 1);
  SkewPoint pt1 = random_skew_point(1, 1, 9);
  auto d1 = exact_distribution(one, pt1);
  Rat p = p_param(pt1, 1, 1);
  CHECK(d1.coeff(Perm({2, 1})) == p);
  CHECK(d1.coeff(Perm({1, 2})) == 1 - p);

  for (int t = 0; t < 10; ++t) {
    SkewPoint pt = random_skew_point(2, 3, 100 + static_cast<std::uint64_t>(t));
    SkewDomain rect = SkewDomain::rectangle(2, 3);
    CHECK(exact_distribution(rect, pt, DistMethod::hecke) ==
          exact_distribution(rect, pt, DistMethod::brute_force));
  }
  // the cap is enforced
  CHECK_THROWS_AS(exact_distribution(SkewDomain::rectangle(3, 3),
                                     random_skew_point(3, 3, 1), DistMethod::brute_force, 8),
                  std::invalid_argument);
}

TEST_CASE("heights") {
  CHECK(height(Perm::identity(5), 3, 2) == 0);
  CHECK(height(Perm::identity(5), 3, 3) == 0);
  // geometric path-count oracle on random pipe dreams
  Prng rng(61);
  for (int t = 0; t < 40; ++t) {
    SkewDomain dom = oracle::random_domain(rng, 4, 1, 14);
    auto cuts = dom.enumerate_cuts();
    if (cuts.empty()) continue;
    Cut cut = cuts[rng.next_below(cuts.size())];
    PipeDream pd;
    for (int b = 0; b < dom.cell_count(); ++b) pd.tiles.push_back(rng.next_below(2));
    Perm pi = color_permutation(dom, pd);
    auto [ci, cj] = dom.cutoff_levels(cut);
    CHECK(height(pi, ci, cj) == oracle::height_by_path_trace(dom, pd, cut));
  }
}

TEST_CASE("joint distribution") {
  SkewDomain rect = SkewDomain::rectangle(2, 2);
  SkewPoint pt = random_skew_point(2, 2, 17);
  // no cuts: point mass at the empty vector
  JointTable t0 = joint_distribution(rect, {}, pt);
  REQUIRE(t0.size() == 1);
  CHECK(t0.begin()->first.empty());
  CHECK(t0.begin()->second == 1);

  // single full-rectangle cut: marginal sums match the exact distribution
  Cut full{1, 1, 2, 2};
  JointTable t1 = joint_distribution(rect, {full}, pt);
  auto dist = exact_distribution(rect, pt);
  std::map<int, Rat> marginal;
  for (const auto& [pi, c] : dist.terms()) marginal[height(pi, 2, 2)] += c;
  for (auto& [h, c] : t1) CHECK(marginal[h[0]] == c);

  // brute-force oracle on the six-cut staircase instance
  SkewDomain dom("LLLULUUU", "UUULULLL");
  std::vector<Cut> cuts = {{1, 2, 3, 3}, {1, 3, 3, 4}, {2, 2, 3, 4},
                           {2, 1, 3, 3}, {2, 2, 4, 3}, {2, 1, 4, 3}};
  SkewPoint big = random_skew_point(4, 4, 23, {200, false, 256});
  CHECK(joint_distribution(dom, cuts, big) == oracle::joint_brute_force(dom, cuts, big));
}

TEST_CASE("domain independence of joint tables") {
  // three different skew domains hosting the same cut tuple
  std::vector<Cut> cuts = {{1, 1, 2, 2}, {2, 1, 2, 2}};
  SkewDomain a = SkewDomain::rectangle(2, 2);
  SkewDomain b = SkewDomain::rectangle(3, 2);
  SkewDomain c = SkewDomain::rectangle(2, 3);
  for (const Cut& cut : cuts) {
    REQUIRE(a.cut_valid(cut));
    REQUIRE(b.cut_valid(cut));
    REQUIRE(c.cut_valid(cut));
  }
  for (int t = 0; t < 3; ++t) {
    SkewPoint pt = random_skew_point(3, 3, 400 + static_cast<std::uint64_t>(t));
    JointTable ta = joint_distribution(a, cuts, pt);
    CHECK(ta == joint_distribution(b, cuts, pt));
    CHECK(ta == joint_distribution(c, cuts, pt));
  }
}

TEST_CASE("relevant cells") {
  SkewDomain rect = SkewDomain::rectangle(3, 3);
  Prng rng(67);
  PipeDream pd;
  for (int b = 0; b < 9; ++b) pd.tiles.push_back(rng.next_below(2));
  CHECK(relevant_cells(rect, pd, {}).empty());

  for (int t = 0; t < 30; ++t) {
    SkewDomain dom = oracle::random_domain(rng, 3, 1, 9);
    auto all_cuts = dom.enumerate_cuts();
    if (all_cuts.empty()) continue;
    std::vector<Cut> cuts = {all_cuts[rng.next_below(all_cuts.size())],
                             all_cuts[rng.next_below(all_cuts.size())]};
    PipeDream cfg;
    for (int b = 0; b < dom.cell_count(); ++b) cfg.tiles.push_back(rng.next_below(2));
    auto rel = relevant_cells(dom, cfg, cuts);
    // rel is contained in the union of the cut rectangles
    for (auto [i, j] : rel) {
      bool inside = false;
      for (const Cut& c : cuts)
        if (i >= c.l && i <= c.r && j >= c.d && j <= c.u) inside = true;
      CHECK(inside);
    }
    // flipping an irrelevant cell changes neither heights nor relevant weights
    auto cells = dom.cells();
    std::vector<std::pair<int, int>> levels;
    for (const Cut& c : cuts) levels.push_back(dom.cutoff_levels(c));
    for (std::size_t idx = 0; idx < cells.size(); ++idx) {
      bool is_rel = std::find(rel.begin(), rel.end(), cells[idx]) != rel.end();
      if (is_rel) continue;
      PipeDream flipped = cfg;
      flipped.tiles[idx] ^= 1;
      CHECK(relevant_cells(dom, flipped, cuts) == rel);
      CHECK(height_vector(color_permutation(dom, cfg), levels) ==
            height_vector(color_permutation(dom, flipped), levels));
      break; // one mutation per instance keeps the test fast
    }
  }
}

TEST_CASE("equivalence-class probabilities factor over relevant cells") {
  SkewDomain dom = SkewDomain::rectangle(2, 2);
  std::vector<Cut> cuts = {{1, 1, 1, 2}};
  SkewPoint pt = random_skew_point(2, 2, 71, {100, false, 256});
  std::vector<Rat> pc = cell_params(dom, pt);
  // group configurations into equivalence classes keyed by the relevant cell
  // set together with the tiles on it
  std::map<std::string, Rat> class_prob;
  std::map<std::string, Rat> class_expected;
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    PipeDream pd;
    for (int b = 0; b < 4; ++b) pd.tiles.push_back((mask >> b) & 1u);
    auto rel = relevant_cells(dom, pd, cuts);
    std::string key;
    Rat relweight(1);
    auto cells = dom.cells();
    sweep_pipe_dream(dom, pd.tiles, [&](std::size_t idx, const CellInfo& c) {
      if (std::find(rel.begin(), rel.end(), cells[idx]) == rel.end()) return;
      key += std::to_string(idx) + (c.crossing ? "X" : "E");
      const Rat& p = pc[idx];
      relweight *= c.crossing ? (c.even_parity ? p : pt.q * p)
                              : (c.even_parity ? Rat(1) - p : Rat(1) - pt.q * p);
    });
    class_prob[key] += pipe_dream_weight(dom, pd, pt);
    class_expected[key] = relweight;
  }
  for (const auto& [key, prob] : class_prob) CHECK(prob == class_expected.at(key));
}

TEST_CASE("disconnected overlap components make height vectors independent") {
  // two cuts with disjoint row and column ranges inside a staircase
  std::vector<Cut> cuts = {{2, 1, 1, 2}, {1, 2, 2, 1}};
  auto host = host_domain(cuts);
  REQUIRE(host.has_value());
  SkewPoint pt = random_skew_point(host->max_col(), host->max_row(), 83, {500, false, 256});
  JointTable joint = joint_distribution(*host, cuts, pt);
  JointTable m1 = joint_distribution(*host, {cuts[0]}, pt);
  JointTable m2 = joint_distribution(*host, {cuts[1]}, pt);
  for (const auto& [h, c] : joint) CHECK(c == m1.at({h[0]}) * m2.at({h[1]}));
}

TEST_CASE("wiring configurations match Hecke coefficients, arbitrary incoming colors") {
  Prng rng(73);
  for (int t = 0; t < 30; ++t) {
    int n = static_cast<int>(rng.next_in(2, 5));
    long r = rng.next_in(1, 8);
    EvalPoint pt = random_wiring_point(n, 700 + static_cast<std::uint64_t>(t));
    Word word;
    std::vector<Rat> params;
    for (long s = 0; s < r; ++s) {
      word.push_back(static_cast<int>(rng.next_in(1, n - 1)));
      params.push_back(p_param(pt, static_cast<int>(rng.next_in(1, n - 1)),
                               static_cast<int>(rng.next_in(2, n))));
    }
    std::vector<Perm> perms = all_perms(n);
    Perm sigma = perms[rng.next_below(perms.size())];
    auto hecke = yb_element(word, params, sigma, pt.q);
    auto brute = oracle::wiring_brute_force(word, params, sigma, pt.q);
    CHECK(hecke.terms().size() == brute.size());
    for (const auto& [pi, c] : brute) CHECK(hecke.coeff(pi) == c);
  }
}

TEST_CASE("prepending a reduced word of sigma absorbs the incoming colors") {
  Prng rng(79);
  for (int t = 0; t < 15; ++t) {
    int n = static_cast<int>(rng.next_in(2, 5));
    EvalPoint pt = random_wiring_point(n, 800 + static_cast<std::uint64_t>(t));
    Word word;
    std::vector<Rat> params;
    long r = rng.next_in(1, 6);
    for (long s = 0; s < r; ++s) {
      word.push_back(static_cast<int>(rng.next_in(1, n - 1)));
      params.push_back(p_param(pt, static_cast<int>(rng.next_in(1, n - 1)),
                               static_cast<int>(rng.next_in(2, n))));
    }
    std::vector<Perm> perms = all_perms(n);
    Perm sigma = perms[rng.next_below(perms.size())];
    Word combined = reduced_word(sigma);
    std::vector<Rat> combined_params(combined.size(), Rat(1));
    combined.insert(combined.end(), word.begin(), word.end());
    combined_params.insert(combined_params.end(), params.begin(), params.end());
    CHECK(yb_element(word, params, sigma, pt.q) ==
          yb_element(combined, combined_params, Perm::identity(n), pt.q));
  }
}

TEST_CASE("sampler") {
  SkewDomain rect = SkewDomain::rectangle(2, 2);
  // forced dynamics: p = 0 overrides give the all-elbow configuration
  std::vector<Rat> zeros(4, Rat(0));
  PipeDream forced = sample_with_params(rect, zeros, Rat(1, 2), 5);
  for (auto t : forced.tiles) CHECK(t == 0);
  std::vector<Rat> ones(4, Rat(1));
  PipeDream crossed = sample_with_params(rect, ones, Rat(1, 2), 5);
  for (auto t : crossed.tiles) CHECK(t == 1);

  PointOptions prob;
  prob.probability = true;
  SkewPoint pt = random_skew_point(2, 2, 11, prob);
  // determinism in the seed
  CHECK(sample(rect, pt, 42).tiles == sample(rect, pt, 42).tiles);
  // constraint violations are rejected
  SkewPoint bad = pt;
  bad.q = Rat(2);
  CHECK_THROWS_AS(sample(rect, bad, 1), std::invalid_argument);

  // empirical frequencies against the exact distribution: 20000 draws, 5 sigma
  auto dist = exact_distribution(rect, pt);
  std::map<Perm, long> counts;
  const long draws = 20000;
  for (long k = 0; k < draws; ++k)
    ++counts[color_permutation(rect, sample(rect, pt, derive_seed(99, static_cast<std::uint64_t>(k))))];
  for (const auto& [pi, c] : dist.terms()) {
    double p = static_cast<double>(numerator(c).convert_to<double>()) /
               denominator(c).convert_to<double>();
    double se = std::sqrt(p * (1 - p) / static_cast<double>(draws));
    double freq = static_cast<double>(counts[pi]) / static_cast<double>(draws);
    CHECK(std::abs(freq - p) <= 5 * se + 1e-9);
  }
}

TEST_CASE("pipe dream serialization") {
  SkewDomain rect = SkewDomain::rectangle(2, 2);
  PipeDream pd;
  pd.tiles = {1, 0, 0, 1};
  CHECK(pipe_dream_to_string(rect, pd) == "XE\nEX");
}
