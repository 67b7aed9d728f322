#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gwq/virasoro.hpp"

using namespace gwq;

namespace {

DiffOpTerm term(Rational c, int hbar, std::map<int, int> mono,
                std::map<int, int> deriv) {
  DiffOpTerm t;
  t.c = c;
  t.hbar = hbar;
  t.mono = std::move(mono);
  t.deriv = std::move(deriv);
  return t;
}

}  // namespace

TEST_CASE("generators act by gamma-ratio multiplication") {
  InfSymplectic l2 = virasoro_generator(2, -4, 4);
  LinComb img = l2.image({0, 0});
  REQUIRE(img.size() == 1);
  CHECK(img.at({2, 0}) == Rational(15, 8));  // (1/2)(3/2)(5/2)

  InfSymplectic lm1 = virasoro_generator(-1, -4, 4);
  LinComb im = lm1.image({0, 0});
  REQUIRE(im.size() == 1);
  CHECK(im.at({-1, 0}) == Rational(1));
}

TEST_CASE("each generator is infinitesimally symplectic") {
  for (int n = -1; n <= 3; ++n)
    CHECK(is_infinitesimally_symplectic(virasoro_generator(n, -6, 6)));
}

TEST_CASE("generators satisfy the witt relations in-window") {
  const int K = 8;
  for (int m = -1; m <= 3; ++m) {
    for (int n = m + 1; n <= 3; ++n) {
      InfSymplectic c = commutator(virasoro_generator(m, -K, K),
                                   virasoro_generator(n, -K, K));
      InfSymplectic lsum = virasoro_generator(m + n, -K, K);
      int checked = 0;
      for (const auto& [key, img] : c.action()) {
        if (key.k < -K + 3 || key.k > K - 3) continue;  // window boundary
        LinComb want = lsum.image(key);
        for (auto& [b, v] : want) v *= Rational(n - m);
        for (auto it = want.begin(); it != want.end();)
          it = (it->second == 0) ? want.erase(it) : std::next(it);
        CHECK(img == want);
        ++checked;
      }
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("quadratic hamiltonian of the zero map vanishes") {
  InfSymplectic zero(&FrobeniusAlgebra::point(), -3, 3);
  for (int k = -3; k <= 3; ++k) zero.set_image({k, 0}, {});
  CHECK(quadratic_hamiltonian(zero, 2, 2).terms().empty());
}

TEST_CASE("hamiltonian of l_0 is -sum (k+1/2) q_k p_k") {
  InfSymplectic l0 = virasoro_generator(0, -5, 5);
  QuadraticForm h = quadratic_hamiltonian(l0, 3, 4);
  for (int k = 0; k <= 3; ++k)
    CHECK(h.coefficient({0, k, 0}, {1, k, 0}) == -Rational(2 * k + 1, 2));
  CHECK(h.coefficient({0, 0, 0}, {0, 0, 0}) == Rational(0));
}

TEST_CASE("hamiltonian of l_{-1} has the q0^2 term") {
  InfSymplectic lm1 = virasoro_generator(-1, -5, 5);
  QuadraticForm h = quadratic_hamiltonian(lm1, 3, 4);
  CHECK(h.coefficient({0, 0, 0}, {0, 0, 0}) == Rational(-1, 2));
  for (int k = 0; k <= 2; ++k)
    CHECK(h.coefficient({0, k + 1, 0}, {1, k, 0}) == Rational(-1));
}

TEST_CASE("quantization rules, one term each") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr q = q_universe(pt, 2);

  QuadraticForm qq;
  qq.add({0, 0, 0}, {0, 1, 0}, Rational(5));
  CHECK(quantize(qq, pt, q) ==
        [&] {
          DiffOperator e(q);
          e.add_term(term(Rational(5), -1, {{0, 1}, {1, 1}}, {}));
          return e;
        }());

  QuadraticForm qp;
  qp.add({0, 2, 0}, {1, 1, 0}, Rational(-3));
  CHECK(quantize(qp, pt, q) ==
        [&] {
          DiffOperator e(q);
          e.add_term(term(Rational(-3), 0, {{2, 1}}, {{1, 1}}));
          return e;
        }());

  QuadraticForm pp;
  pp.add({1, 0, 0}, {1, 0, 0}, Rational(7));
  CHECK(quantize(pp, pt, q) ==
        [&] {
          DiffOperator e(q);
          e.add_term(term(Rational(7), 1, {}, {{0, 2}}));
          return e;
        }());
}

TEST_CASE("dilaton shift rewrites q1 as t1 - 1") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr q = q_universe(pt, 2);
  UniversePtr t = t_universe(pt, 2);
  DiffOperator op(q);
  op.add_term(term(Rational(1), 0, {{1, 1}}, {{0, 1}}));  // q1 d/dq0
  DiffOperator shifted = dilaton_shift_operator(op, pt, t);
  DiffOperator expect(t);
  expect.add_term(term(Rational(1), 0, {{1, 1}}, {{0, 1}}));
  expect.add_term(term(Rational(-1), 0, {}, {{0, 1}}));
  CHECK(shifted == expect);
}

TEST_CASE("quantized operators match the displayed coefficients") {
  // l^_0 = (3/2) d/dt1 - sum (k+1/2) t_k d/dt_k
  DiffOperator l0 = quantized_virasoro(0, 4);
  UniversePtr t = l0.universe();
  DiffOperator expect(t);
  expect.add_term(term(Rational(3, 2), 0, {}, {{1, 1}}));
  for (int k = 0; k <= 4; ++k)
    expect.add_term(term(-Rational(2 * k + 1, 2), 0, {{k, 1}}, {{k, 1}}));
  CHECK(l0 == expect);

  // l^_{-1}: the hbar^{-1} t0^2 coefficient is -1/2 (string equation sign)
  DiffOperator lm1 = quantized_virasoro(-1, 4);
  Rational c_t0sq(0), c_hd2(0);
  for (const auto& tm : lm1.terms())
    if (tm.hbar == -1 && tm.mono == std::map<int, int>{{0, 2}} &&
        tm.deriv.empty())
      c_t0sq = tm.c;
  CHECK(c_t0sq == Rational(-1, 2));

  // l^_1: the hbar d^2/dt0^2 coefficient is -1/8
  DiffOperator l1 = quantized_virasoro(1, 4);
  for (const auto& tm : l1.terms())
    if (tm.hbar == 1 && tm.mono.empty() &&
        tm.deriv == std::map<int, int>{{0, 2}})
      c_hd2 = tm.c;
  CHECK(c_hd2 == Rational(-1, 8));

  // constraint operator shifts only n = 0, by -1/16
  DiffOperator diff = virasoro_constraint_operator(0, 4) - l0;
  DiffOperator expect_const(t);
  expect_const.add_term(term(Rational(-1, 16), 0, {}, {}));
  CHECK(diff == expect_const);
  CHECK(virasoro_constraint_operator(1, 4) == l1);
}

TEST_CASE("logarithmic action on a potential") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr t = t_universe(pt, 1);
  Truncation tr{4, 1, 0};
  TruncatedSeries t0 = TruncatedSeries::variable(t, tr, 0);
  GenusExpandedPotential D;
  D.F = {t0 * t0 * t0 * Rational(1, 6), TruncatedSeries(t, tr)};

  DiffOperator d0(t);
  d0.add_term(term(Rational(1), 0, {}, {{0, 1}}));
  auto grades = apply(d0, D);
  CHECK(grades.at(-1) == t0 * t0 * Rational(1, 2));
  CHECK(grades.at(0).is_zero());

  DiffOperator hd2(t);
  hd2.add_term(term(Rational(1), 1, {}, {{0, 2}}));
  auto g2 = apply(hd2, D);
  CHECK(g2.at(0) == t0);  // hbar^0: second derivative of F^0
  CHECK(g2.at(-1) ==
        t0 * t0 * t0 * t0 * Rational(1, 4));  // (dF^0)^2 at hbar^{-1}
}

TEST_CASE("weyl commutators") {
  const FrobeniusAlgebra& pt = FrobeniusAlgebra::point();
  UniversePtr q = q_universe(pt, 1);
  DiffOperator d0(q), q0(q);
  d0.add_term(term(Rational(1), 0, {}, {{0, 1}}));
  q0.add_term(term(Rational(1), 0, {{0, 1}}, {}));
  DiffOperator one(q);
  one.add_term(term(Rational(1), 0, {}, {}));
  CHECK(commutator(d0, q0) == one);
  CHECK(commutator(q0, q0) == DiffOperator(q));
  CHECK(commutator(d0, d0) == DiffOperator(q));

  // composition is associative on a mixed example
  DiffOperator m = compose(d0, compose(q0, d0));
  CHECK(m == compose(compose(d0, q0), d0));
}
