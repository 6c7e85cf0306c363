#include <catch2/catch_amalgamated.hpp>

#include "sixv/point.hpp"
#include "sixv/poly.hpp"

using namespace sixv;

namespace {

Int random_big(Prng& rng, int bits) {
  Int v = 0;
  for (int b = 0; b < bits; b += 32) v = (v << 32) | Int(rng.next_u64() & 0xffffffffULL);
  return v + 1;
}

IntPoly random_poly(Prng& rng) {
  std::vector<Int> c;
  long deg = rng.next_in(0, 5);
  for (long i = 0; i <= deg; ++i) c.push_back(Int(rng.next_in(-9, 9)));
  return IntPoly(std::move(c));
}

} // namespace

TEST_CASE("rational arithmetic is exact on 256-bit operands") {
  Prng rng(91);
  for (int t = 0; t < 50; ++t) {
    Int a = random_big(rng, 256), b = random_big(rng, 256);
    Int c = random_big(rng, 256), d = random_big(rng, 256);
    Rat sum = Rat(a, b) + Rat(c, d);
    CHECK(sum == Rat(a * d + c * b, b * d));
    Rat prod = Rat(a, b) * Rat(c, d);
    CHECK(prod == Rat(a * c, b * d));
  }
}

TEST_CASE("rational serialization round-trips") {
  CHECK(rat_to_string(Rat(-3, 6)) == "-1/2");
  CHECK(rat_from_string("-1/2") == Rat(-1, 2));
  CHECK(rat_from_string("7") == Rat(7));
  CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}

TEST_CASE("integer polynomial ring identities") {
  Prng rng(17);
  for (int t = 0; t < 40; ++t) {
    IntPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
  CHECK(IntPoly::q_minus_one().eval(Int(1)) == 0);
  CHECK(IntPoly::q_power(3).degree() == 3);
  CHECK(IntPoly(0).is_zero());
  CHECK((IntPoly(5) - IntPoly(5)).is_zero());
}

TEST_CASE("crossing parameter") {
  Rat q(1, 2);
  CHECK(p_of(q, Rat(1), Rat(1)) == 0); // equal rapidities
  CHECK(p_of(q, Rat(1), Rat(2)) == Rat(2, 3));
  // y -> 0 specialization gives the constant 1/q
  CHECK(p_of(Rat(5, 7), Rat(3), Rat(0)) == Rat(7, 5));
  CHECK_THROWS_AS(p_of(Rat(1, 2), Rat(2), Rat(1)), singular_point);
}

TEST_CASE("random points are deterministic in the seed and satisfy invariants") {
  EvalPoint a = random_wiring_point(5, 99), b = random_wiring_point(5, 99);
  CHECK(a.q == b.q);
  CHECK(a.z == b.z);
  CHECK(point_valid(a));
  EvalPoint c = random_wiring_point(5, 100);
  CHECK(a.z != c.z);

  PointOptions prob;
  prob.probability = true;
  SkewPoint sp = random_skew_point(3, 4, 7, prob);
  CHECK((sp.q > 0 && sp.q < 1));
  for (const Rat& x : sp.x)
    for (const Rat& y : sp.y) CHECK((x > 0 && x < y));
  CHECK(point_valid(sp));
}

TEST_CASE("identity_test passes on true identities and finds witnesses") {
  // the 2x3 boundary identity as rational functions of (q, z1..z5),
  // reading (x1,x2,y1,y2,y3) := (z1,z2,z3,z4,z5)
  auto p = [](const EvalPoint& pt, int i, int j) { return p_of(pt.q, pt.zat(i), pt.zat(j + 2)); };
  auto lhs = [&](const EvalPoint& pt) {
    return p(pt, 1, 3) * p(pt, 2, 3) * (1 - p(pt, 1, 2)) * (1 - p(pt, 2, 1)) *
           (p(pt, 1, 1) * (1 - pt.q * p(pt, 2, 2)) + p(pt, 2, 2) * (1 - p(pt, 1, 1)));
  };
  auto rhs = [&](const EvalPoint& pt) {
    return p(pt, 1, 3) * p(pt, 2, 3) * (1 - p(pt, 1, 1)) * (1 - p(pt, 2, 2)) *
           (p(pt, 1, 2) * (1 - pt.q * p(pt, 2, 1)) + p(pt, 2, 1) * (1 - p(pt, 1, 2)));
  };
  IdentityReport rep = identity_test(5, lhs, rhs, 20, 4);
  CHECK(rep.pass);
  CHECK(rep.trials_done == 20);
  CHECK(rep.points.size() == 20);

  // syntactically equal expressions trivially pass
  IdentityReport triv = identity_test(5, lhs, lhs, 5, 4);
  CHECK(triv.pass);

  // flipping one sign breaks the identity, with a recorded witness
  auto rhs_bad = [&](const EvalPoint& pt) {
    return p(pt, 1, 3) * p(pt, 2, 3) * (1 - p(pt, 1, 1)) * (1 - p(pt, 2, 2)) *
           (p(pt, 1, 2) * (1 - pt.q * p(pt, 2, 1)) - p(pt, 2, 1) * (1 - p(pt, 1, 2)));
  };
  IdentityReport bad = identity_test(5, lhs, rhs_bad, 20, 4);
  CHECK_FALSE(bad.pass);
  CHECK(bad.witness.has_value());
  CHECK(bad.witness_values->first != bad.witness_values->second);
}

TEST_CASE("mutated identities fail with positive probability per point") {
  auto lhs = [](const EvalPoint& pt) { return pt.zat(1) * pt.zat(2); };
  auto rhs = [](const EvalPoint& pt) { return pt.zat(1) * pt.zat(1); };
  int failures = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    IdentityReport rep = identity_test(2, lhs, rhs, 1, 1000 + s);
    failures += rep.pass ? 0 : 1;
  }
  CHECK(failures >= 19); // z1 == z2 is a measure-zero event in the box
}
