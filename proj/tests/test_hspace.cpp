#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "gwq/hspace.hpp"

using namespace gwq;

namespace {

HElement random_element(std::mt19937& rng, const FrobeniusAlgebra& alg,
                        const UniversePtr& uni, Truncation tr) {
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<int> zp(-3, 3);
  std::uniform_int_distribution<int> comp(0, alg.dim() - 1);
  HElement f(&alg, uni, tr);
  for (int i = 0; i < 5; ++i)
    f.add(zp(rng), comp(rng), Rational(num(rng), den(rng)));
  return f;
}

}  // namespace

TEST_CASE("point algebra pairing") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  CHECK(pt.dim() == 1);
  CHECK(pt.pairing()[0][0] == Rational(1));
  CHECK(pt.pairing_inverse()[0][0] == Rational(1));
  CHECK(frobenius_pair({Rational(2)}, {Rational(3)}, pt) == Rational(6));
}

TEST_CASE("projective line pairing is antidiagonal") {
  FrobeniusAlgebra p1 = FrobeniusAlgebra::p1();
  CHECK(p1.dim() == 2);
  CHECK(frobenius_pair({Rational(1), Rational(0)}, {Rational(0), Rational(1)},
                       p1) == Rational(1));
  CHECK(frobenius_pair({Rational(1), Rational(0)}, {Rational(1), Rational(0)},
                       p1) == Rational(0));
  // g * g^{-1} = id
  Matrix prod(2, std::vector<Rational>(2, Rational(0)));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        prod[i][j] += p1.pairing()[i][k] * p1.pairing_inverse()[k][j];
  CHECK(prod[0][0] == Rational(1));
  CHECK(prod[0][1] == Rational(0));
  CHECK(prod[1][1] == Rational(1));
}

TEST_CASE("exact matrix inversion") {
  Matrix m = {{Rational(2), Rational(1)}, {Rational(1), Rational(1)}};
  Matrix inv = invert_exact(m);
  CHECK(inv[0][0] == Rational(1));
  CHECK(inv[0][1] == Rational(-1));
  CHECK(inv[1][0] == Rational(-1));
  CHECK(inv[1][1] == Rational(2));
  CHECK_THROWS(invert_exact(Matrix{{Rational(0)}}));
}

TEST_CASE("residue pairing on basis elements") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"s"});
  Truncation tr{4, 0, 0};

  HElement one(&pt, u, tr), zinv(&pt, u, tr);
  one.add(0, 0, Rational(1));
  zinv.add(-1, 0, Rational(1));
  CHECK(omega(one, zinv).constant_term() == Rational(1));
  CHECK(omega(zinv, one).constant_term() == Rational(-1));

  // both halves are isotropic
  HElement a(&pt, u, tr), b(&pt, u, tr);
  a.add(0, 0, Rational(1));
  a.add(2, 0, Rational(5));
  b.add(1, 0, Rational(-3));
  CHECK(omega(a, b).is_zero());
}

TEST_CASE("residue pairing properties on random elements") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::indexed("s", 1);
  Truncation tr{4, 1, 0};
  std::mt19937 rng(2024);
  for (int it = 0; it < 40; ++it) {
    HElement f = random_element(rng, pt, u, tr);
    HElement g = random_element(rng, pt, u, tr);
    HElement h = random_element(rng, pt, u, tr);
    CHECK(omega(f, g) == -omega(g, f));
    CHECK(omega(f + g, h) == omega(f, h) + omega(g, h));
    CHECK(omega(f.plus_part(), g.plus_part()).is_zero());
    CHECK(omega(f.minus_part(), g.minus_part()).is_zero());
    CHECK(f.plus_part() + f.minus_part() == f);
  }
}

TEST_CASE("darboux coordinates read off the standard form") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"t0", "t1"});
  Truncation tr{3, 1, 0};

  // f = -z + t0 + t1 z: q0 = t0, q1 = t1 - 1, no p part
  HElement f(&pt, u, tr);
  f.add(1, 0, Rational(-1));
  f.add(0, 0, TruncatedSeries::variable(u, tr, 0));
  f.add(1, 0, TruncatedSeries::variable(u, tr, 1));
  DarbouxVector d = to_darboux(f);
  CHECK(d.q[0][0] == TruncatedSeries::variable(u, tr, 0));
  CHECK(d.q[1][0] ==
        TruncatedSeries::variable(u, tr, 1) -
            TruncatedSeries::constant(u, tr, Rational(1)));
  CHECK(d.p.empty());

  // f = (-z)^{-1}: p0 = 1
  HElement g(&pt, u, tr);
  g.add(-1, 0, Rational(-1));
  DarbouxVector dg = to_darboux(g);
  REQUIRE(dg.p.size() == 1);
  CHECK(dg.p[0][0].constant_term() == Rational(1));
}

TEST_CASE("darboux round-trip and canonical pairing") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::indexed("s", 1);
  Truncation tr{4, 1, 0};
  std::mt19937 rng(31337);
  for (int it = 0; it < 40; ++it) {
    HElement f = random_element(rng, pt, u, tr);
    HElement g = random_element(rng, pt, u, tr);
    CHECK(from_darboux(to_darboux(f), pt, u, tr) == f);
    // Omega(f, g) = sum p_f q_g - q_f p_g
    DarbouxVector df = to_darboux(f), dg = to_darboux(g);
    TruncatedSeries expect(u, tr);
    for (std::size_t l = 0; l < df.p.size() && l < dg.q.size(); ++l)
      expect += df.p[l][0] * dg.q[l][0];
    for (std::size_t l = 0; l < dg.p.size() && l < df.q.size(); ++l)
      expect -= df.q[l][0] * dg.p[l][0];
    CHECK(omega(f, g) == expect);
  }
}

TEST_CASE("dilaton shift") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"t0"});
  Truncation tr{3, 0, 0};

  HElement zero(&pt, u, tr);
  HElement minus_z(&pt, u, tr);
  minus_z.add(1, 0, Rational(-1));
  CHECK(dilaton_shift(zero) == minus_z);

  HElement z(&pt, u, tr);
  z.add(1, 0, Rational(1));
  CHECK(dilaton_shift(z).is_zero());

  HElement t0(&pt, u, tr);
  t0.add(0, 0, TruncatedSeries::variable(u, tr, 0));
  HElement shifted = dilaton_shift(t0);
  CHECK(shifted.component(1, 0).constant_term() == Rational(-1));
  CHECK(shifted.component(0, 0) == TruncatedSeries::variable(u, tr, 0));

  CHECK(dilaton_unshift(dilaton_shift(t0)) == t0);
}

TEST_CASE("element json round-trip") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::indexed("s", 1);
  Truncation tr{4, 1, 0};
  std::mt19937 rng(808);
  for (int it = 0; it < 10; ++it) {
    HElement f = random_element(rng, pt, u, tr);
    CHECK(helement_from_json(helement_to_json(f), pt) == f);
  }
}
