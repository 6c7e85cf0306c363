#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "sixv/symmetry.hpp"

using namespace sixv;

TEST_CASE("flip theorem on the 2x3 instance") {
  FlipInstance inst{2, 3, BoundaryCondition({{3, 2}, {5, 3}}), BoundaryCondition({{2, 4}})};
  Verdict v = verify_flip(inst, 5, 7);
  CHECK(v.status == Status::PASS);
  CHECK(v.points_used == 5);
  // both sides equal the displayed closed forms at a random point
  SkewPoint pt = random_skew_point(2, 3, 99);
  auto p = [&](int i, int j) { return p_param(pt, i, j); };
  Rat closed = p(1, 3) * p(2, 3) * (1 - p(1, 2)) * (1 - p(2, 1)) *
               (p(1, 1) * (1 - pt.q * p(2, 2)) + p(2, 2) * (1 - p(1, 1)));
  SkewDomain rect = SkewDomain::rectangle(2, 3);
  CHECK(boundary_projection(exact_distribution(rect, pt), 2, 3, inst.h, inst.v) == closed);

  // empty boundary data passes trivially
  FlipInstance empty{2, 2, BoundaryCondition(), BoundaryCondition()};
  CHECK(verify_flip(empty, 3, 1).status == Status::PASS);

  // overriding the target breaks the identity
  FlipInstance mutated = inst;
  mutated.h_target = BoundaryCondition({{3, 3}, {4, 1}});
  Verdict bad = verify_flip(mutated, 5, 7);
  CHECK(bad.status == Status::FAIL);
  CHECK(bad.witness.has_value());

  // window violations are user errors
  FlipInstance invalid{2, 3, BoundaryCondition({{1, 2}}), BoundaryCondition()};
  CHECK(verify_flip(invalid, 1, 1).status == Status::INVALID);
}

TEST_CASE("flip theorem scans exhaustively at small sizes") {
  for (int m = 1; m <= 2; ++m)
    for (int n = 1; m + n <= 4; ++n) {
      for (const auto& [h, v] : realized_boundary_pairs(m, n, 3)) {
        FlipInstance inst{m, n, h, v};
        CHECK(verify_flip(inst, 3, derive_seed(5, static_cast<std::uint64_t>(m * 16 + n)))
                  .status == Status::PASS);
      }
      // one shot through the scan-all path as well
      FlipInstance all{m, n, BoundaryCondition(), BoundaryCondition()};
      CHECK(verify_flip(all, 2, 9, true).status == Status::PASS);
    }
}

TEST_CASE("generalized flip") {
  // identity parabolic factors reduce to the plain flip
  GenFlipInstance plain;
  plain.n = 5;
  plain.ci = 2;
  plain.cj = 3;
  plain.m = 2;
  plain.nn = 3;
  plain.w_left = plain.w_down = plain.w_up = plain.w_right = Perm::identity(5);
  CHECK(verify_generalized_flip(plain, 3, 2).status == Status::PASS);

  // the n = 9 frame
  GenFlipInstance g;
  g.n = 9;
  g.ci = 5;
  g.cj = 4;
  g.m = 3;
  g.nn = 2;
  g.w_left = Perm({1, 2, 3, 4, 5, 7, 6, 9, 8});
  g.w_down = Perm({2, 4, 1, 3, 5, 6, 7, 8, 9});
  g.w_up = Perm({1, 2, 3, 4, 6, 5, 8, 7, 9});
  g.w_right = Perm({3, 1, 2, 4, 5, 6, 7, 8, 9});
  CHECK(verify_generalized_flip(g, 2, 11).status == Status::PASS);

  // ci + cj != n with the window constraints honored
  GenFlipInstance win;
  win.n = 5;
  win.ci = 2;
  win.cj = 2;
  win.m = 1;
  win.nn = 1;
  win.w_left = Perm({1, 2, 4, 3, 5});  // S_[3,4] within the window [1,4]
  win.w_down = Perm({2, 1, 3, 4, 5});
  win.w_up = Perm({1, 2, 3, 5, 4});
  win.w_right = Perm({2, 1, 3, 4, 5});
  CHECK(verify_generalized_flip(win, 3, 13).status == Status::PASS);

  // window violation: w_left moves 5, outside [kmin,kmax] = [1,4]
  GenFlipInstance badwin = win;
  badwin.w_left = Perm({1, 2, 3, 5, 4});
  Verdict v = verify_generalized_flip(badwin, 1, 1);
  CHECK(v.status == Status::INVALID);
  CHECK(v.detail.find("window") != std::string::npos);

  // parabolic membership violation
  GenFlipInstance badpar = plain;
  badpar.w_down = Perm::identity(5).times_s(3); // touches position > ci
  CHECK(verify_generalized_flip(badpar, 1, 1).status == Status::INVALID);
}

TEST_CASE("check_admissible and interval images") {
  std::vector<Cut> cuts = {{1, 2, 3, 3}, {2, 1, 4, 3}};
  Transformation ident{Perm::identity(4), Perm::identity(4)};
  auto same = check_admissible(ident, cuts);
  REQUIRE(same.has_value());
  CHECK(*same == cuts);

  // row reversal as rev_{1,4} o rev_{2,3} swaps the two vertical intervals
  Transformation dbl{Perm::identity(4), rev_perm(2, 3, 4) * rev_perm(1, 4, 4)};
  auto img = check_admissible(dbl, cuts);
  REQUIRE(img.has_value());
  CHECK((*img)[0] == Cut{1, 2, 3, 3});
  CHECK((*img)[1] == Cut{2, 1, 4, 3});

  // a transformation mapping an interval to a non-interval is rejected
  Transformation broken{Perm({1, 3, 2, 4}), Perm::identity(4)};
  CHECK_FALSE(check_admissible(broken, {{1, 1, 1, 2}}).has_value());
}

TEST_CASE("catalog hypothesis checking") {
  SkewDomain rect = SkewDomain::rectangle(3, 3);
  std::vector<Cut> cuts = {{1, 2, 3, 3}, {2, 1, 3, 3}};
  // a crossing cut works
  CatalogData ok;
  ok.cross = Cut{2, 1, 3, 2};
  CHECK_NOTHROW(elementary_flip_catalog(FlipKind::global_H, ok, rect, cuts));
  // a non-crossing cut names the failed clause
  CatalogData bad;
  bad.cross = Cut{1, 1, 1, 1};
  CHECK_THROWS_WITH(elementary_flip_catalog(FlipKind::global_H, bad, rect, cuts),
                    Catch::Matchers::ContainsSubstring("does not cross"));
  // strips must not be straddled
  CatalogData strip;
  strip.d = 2;
  strip.u = 2;
  CHECK_THROWS_WITH(elementary_flip_catalog(FlipKind::local_H, strip, rect, {{1, 2, 3, 3}}),
                    Catch::Matchers::ContainsSubstring("straddles"));
  // H_shift insists on an empty middle family
  CatalogData shift;
  shift.d = 1;
  shift.u = 3;
  shift.dp = 2;
  shift.up = 3;
  CHECK_THROWS_WITH(elementary_flip_catalog(FlipKind::H_shift, shift, rect, {{1, 2, 2, 3}}),
                    Catch::Matchers::ContainsSubstring("J must be empty"));
}

TEST_CASE("catalog transformations verify as main-theorem instances") {
  Prng rng(101);
  int done = 0;
  while (done < 12) {
    auto ci = oracle::random_catalog_instance(rng);
    REQUIRE(ci.has_value());
    Verdict v = verify_main(ci->inst, 2, derive_seed(7, static_cast<std::uint64_t>(done)),
                            {2000, false, 256});
    INFO("kind " << flip_kind_name(ci->kind));
    CHECK(v.status == Status::PASS);
    ++done;
  }
}

TEST_CASE("shift special case: one middle cut between nested strips") {
  // |J| = 1 with the inner strip shrunk by one row on each side
  SkewDomain rect = SkewDomain::rectangle(3, 4);
  std::vector<Cut> cuts = {{1, 2, 3, 3}, {2, 1, 4, 2}};
  CatalogData data;
  data.d = 1;
  data.u = 4;
  data.dp = 2;
  data.up = 3;
  Transformation phi = elementary_flip_catalog(FlipKind::double_H, data, rect, cuts);
  auto inst = instance_from_transformation(rect, cuts, phi);
  REQUIRE(inst.has_value());
  CHECK(verify_main(*inst, 3, 21, {2000, false, 256}).status == Status::PASS);
}

TEST_CASE("negative controls") {
  Prng rng(103);
  int invalids = 0, fails = 0;
  for (int t = 0; t < 8 && (invalids < 3 || fails < 3); ++t) {
    auto ci = oracle::random_catalog_instance(rng);
    REQUIRE(ci.has_value());
    if (auto bad = oracle::mutate_unsatisfiable(ci->inst, rng)) {
      CHECK(verify_main(*bad, 2, 5, {2000, false, 256}).status == Status::INVALID);
      ++invalids;
    }
    if (auto wrong = oracle::mutate_wrong_variables(ci->inst, rng)) {
      CHECK(verify_main(*wrong, 3, 5, {2000, false, 256}).status == Status::FAIL);
      ++fails;
    }
  }
  CHECK(invalids >= 3);
  CHECK(fails >= 3);
}

TEST_CASE("single height functions are symmetric in their support variables") {
  SkewDomain rect = SkewDomain::rectangle(3, 3);
  Cut cut{1, 2, 3, 2};
  SkewPoint pt = random_skew_point(3, 3, 31, {1000, false, 256});
  JointTable base = joint_distribution(rect, {cut}, pt);
  // permute x within the cut columns [1,2]
  SkewPoint px = pt;
  std::swap(px.x[0], px.x[1]);
  CHECK(joint_distribution(rect, {cut}, px) == base);
  // permute y within the cut rows [2,3]
  SkewPoint py = pt;
  std::swap(py.y[1], py.y[2]);
  CHECK(joint_distribution(rect, {cut}, py) == base);
}

TEST_CASE("composing catalog stages equals verifying the composition") {
  SkewDomain rect = SkewDomain::rectangle(3, 3);
  std::vector<Cut> cuts = {{1, 1, 3, 3}, {2, 1, 3, 3}};
  Transformation phi1 = elementary_flip_catalog(FlipKind::cps, {}, rect, cuts);
  auto inst1 = instance_from_transformation(rect, cuts, phi1);
  REQUIRE(inst1.has_value());
  REQUIRE(verify_main(*inst1, 2, 41, {2000, false, 256}).status == Status::PASS);
  Transformation phi2 = elementary_flip_catalog(FlipKind::cps, {}, inst1->dom_b, inst1->cuts_b);
  auto inst2 = instance_from_transformation(inst1->dom_b, inst1->cuts_b, phi2);
  REQUIRE(inst2.has_value());
  REQUIRE(verify_main(*inst2, 2, 43, {2000, false, 256}).status == Status::PASS);
  // composition: phi1 acts first
  Transformation comp{phi1.phi_h * phi2.phi_h, phi1.phi_v * phi2.phi_v};
  auto inst3 = instance_from_transformation(rect, cuts, comp);
  REQUIRE(inst3.has_value());
  CHECK(inst3->cuts_b == inst2->cuts_b);
  CHECK(verify_main(*inst3, 2, 47, {2000, false, 256}).status == Status::PASS);
}

TEST_CASE("identity instance passes") {
  SkewDomain rect = SkewDomain::rectangle(2, 2);
  MainInstance inst;
  inst.dom_a = inst.dom_b = rect;
  inst.cuts_a = inst.cuts_b = {{1, 1, 2, 2}};
  inst.xmap = Perm::identity(2);
  inst.ymap = Perm::identity(2);
  CHECK(verify_main(inst, 3, 3).status == Status::PASS);
}
