#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gwq/cone.hpp"

using namespace gwq;

namespace {

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

}  // namespace

TEST_CASE("genus-zero potential in both coordinate systems") {
  CorrelatorTable table = solve_virasoro(0, 8);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr t = t_universe(pt, 2);
  Truncation tr{5, 2, 0};

  TruncatedSeries F = genus0_potential(table, t, tr);
  CHECK(F.coefficient({3, 0, 0}) == Rational(1, 6));
  CHECK(F.coefficient({3, 1, 0}) == Rational(1, 6));
  CHECK(F.coefficient({2, 0, 1}) == Rational(0));      // off dimension
  CHECK(F.coefficient({4, 0, 1}) == Rational(1, 24));  // <tau_0^4 tau_2> = 1
  CHECK(F.coefficient({3, 2, 0}) == Rational(1, 6));   // <tau_0^3 tau_1^2> = 2

  // the q-form substitutes t1 = q1 + 1, collapsing the t1-tower onto q1 = 0
  TruncatedSeries Fq = genus0_potential(table, t, tr, true);
  CHECK(Fq.coefficient({3, 0, 0}) ==
        F.coefficient({3, 0, 0}) + F.coefficient({3, 1, 0}) +
            F.coefficient({3, 2, 0}));
}

TEST_CASE("the zero input maps to the shifted origin") {
  CorrelatorTable table = solve_virasoro(0, 8);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"a"});
  Truncation tr{6, 6, 0};
  HElement t(&pt, u, tr);
  HElement J = cone_point(t, table, ConeConfig{5, 6});
  HElement minus_z(&pt, u, tr);
  minus_z.add(1, 0, Rational(-1));
  CHECK(J == minus_z);
}

TEST_CASE("one-parameter input has the classical closed form") {
  CorrelatorTable table = solve_virasoro(0, 10);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"a"});
  Truncation tr{8, 8, 0};
  HElement t(&pt, u, tr);
  t.add(0, 0, TruncatedSeries::variable(u, tr, 0));
  HElement J = cone_point(t, table, ConeConfig{5, 8});

  CHECK(J.component(1, 0).constant_term() == Rational(-1));
  CHECK(J.component(0, 0) == TruncatedSeries::variable(u, tr, 0));
  // z^{1-n} coefficient is (-1)^{n-1} a^n / n! for n >= 2
  for (int n = 2; n <= 6; ++n) {
    ExpVec e = {n};
    Rational want = Rational((n % 2 == 0) ? -1 : 1) / factorial(n);
    CHECK(J.component(1 - n, 0).coefficient(e) == want);
  }
  CHECK(J.component(-1, 0).coefficient({2}) == Rational(-1, 2));
}

TEST_CASE("positive-part law on a mixed input") {
  CorrelatorTable table = solve_virasoro(0, 10);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"a", "b"});
  Truncation tr{6, 6, 0};
  HElement t(&pt, u, tr);
  t.add(0, 0, TruncatedSeries::variable(u, tr, 0));
  t.add(1, 0, TruncatedSeries::variable(u, tr, 1));
  HElement J = cone_point(t, table, ConeConfig{5, 6});
  CHECK(J.plus_part() == dilaton_shift(t));
}

TEST_CASE("cone points pass the graph test and perturbations fail") {
  CorrelatorTable table = solve_virasoro(0, 10);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"a", "b"});
  Truncation tr{6, 6, 0};

  HElement t(&pt, u, tr);
  t.add(0, 0, TruncatedSeries::variable(u, tr, 0));
  t.add(2, 0, TruncatedSeries::variable(u, tr, 1));
  HElement J = cone_point(t, table, ConeConfig{5, 6});
  CHECK(check_on_cone(J, table, 5).ok);

  // -z alone lies on the cone
  HElement minus_z(&pt, u, tr);
  minus_z.add(1, 0, Rational(-1));
  CHECK(check_on_cone(minus_z, table, 5).ok);

  // a pure p-perturbation of -z does not: p_0 = 1 but dF/dq_0 = 0
  HElement off = minus_z;
  off.add(-1, 0, Rational(-1));  // phi (-z)^{-1}
  CHECK(!check_on_cone(off, table, 5).ok);

  // perturbing a genuine cone point off the graph is detected too
  HElement off2 = J;
  off2.add(-2, 0, TruncatedSeries::variable(u, tr, 0));
  CHECK(!check_on_cone(off2, table, 5).ok);
}

TEST_CASE("inputs outside the formal neighborhood are rejected") {
  CorrelatorTable table = solve_virasoro(0, 8);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr u = VarUniverse::make({"a"});
  Truncation tr{4, 4, 0};
  HElement bad(&pt, u, tr);
  bad.add(0, 0, Rational(1));  // nonzero constant term
  CHECK_THROWS(cone_point(bad, table, ConeConfig{5, 4}));
  HElement neg(&pt, u, tr);
  neg.add(-1, 0, TruncatedSeries::variable(u, tr, 0));
  CHECK_THROWS(cone_point(neg, table, ConeConfig{5, 4}));
}

TEST_CASE("euler identity certifies degree-2 homogeneity") {
  CorrelatorTable table = solve_virasoro(0, 10);
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  ConeReport rep =
      cone_homogeneity_check(table, t_universe(pt, 6), Truncation{6, 6, 0});
  INFO(rep.detail);
  CHECK(rep.ok);
}
