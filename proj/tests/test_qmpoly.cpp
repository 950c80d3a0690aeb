#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qmx/dims.hpp"
#include "qmx/qmpoly.hpp"

using qmx::Exponents;
using qmx::frac;
using qmx::QMPoly;
using qmx::Rational;

namespace {

QMPoly random_homogeneous(std::mt19937_64& rng, int w, int max_depth) {
  QMPoly f;
  for (const auto& m : qmx::monomial_basis(max_depth, w)) {
    f = f + oracle::random_rational(rng) * m;
  }
  return f;
}

}  // namespace

TEST_CASE("Eisenstein expansions match the divisor-sum formulas") {
  const int n = 60;
  auto e2 = qmx::eisenstein(qmx::Eisenstein::E2, n);
  auto e4 = qmx::eisenstein(qmx::Eisenstein::E4, n);
  auto e6 = qmx::eisenstein(qmx::Eisenstein::E6, n);
  CHECK(e2.q_coeff(0) == 1);
  CHECK(e2.q_coeff(1) == -24);
  CHECK(e2.q_coeff(2) == -72);
  CHECK(e2.q_coeff(3) == -96);
  CHECK(e4.q_coeff(1) == 240);
  CHECK(e4.q_coeff(2) == 2160);
  CHECK(e6.q_coeff(1) == -504);
  CHECK(e6.q_coeff(2) == -16632);
  for (int k = 1; k < n; ++k) {
    CHECK(e2.q_coeff(k) == Rational(-24 * oracle::sigma_brute(1, k)));
    CHECK(e4.q_coeff(k) == Rational(240 * oracle::sigma_brute(3, k)));
    CHECK(e6.q_coeff(k) == Rational(-504 * oracle::sigma_brute(5, k)));
  }
  CHECK(e2.prec() == 2 * n);
}

TEST_CASE("delta_form") {
  const auto delta = qmx::delta_form();
  CHECK(delta.weight() == 12);
  CHECK(delta.depth() == 0);
  auto s = qmx::expand(delta, 40);
  const auto tau = oracle::delta_product(40);
  for (int k = 0; k < 40; ++k) CHECK(s.q_coeff(k) == Rational(tau[static_cast<std::size_t>(k)]));
  CHECK(s.q_coeff(3) == 252);
  auto short_expansion = qmx::expand(delta, 3);
  CHECK(short_expansion == qmx::USeries({{2, 1}, {4, -24}}, 6));
}

TEST_CASE("Ramanujan derivation") {
  const auto E2 = QMPoly::E2();
  const auto E4 = QMPoly::E4();
  const auto E6 = QMPoly::E6();
  CHECK(qmx::ramanujan_D(E2) == frac(1, 12) * (E2 * E2 - E4));
  CHECK(qmx::ramanujan_D(E4) == frac(1, 3) * (E2 * E4 - E6));
  CHECK(qmx::ramanujan_D(E6) == frac(1, 2) * (E2 * E6 - E4 * E4));
  CHECK(qmx::ramanujan_D(qmx::delta_form()) == E2 * qmx::delta_form());
  CHECK(qmx::ramanujan_D(QMPoly::constant(5)).is_zero());
}

TEST_CASE("expand: D(E4)/240 has coefficients n*sigma_3(n)") {
  const auto f = frac(1, 720) * (QMPoly::E2() * QMPoly::E4() - QMPoly::E6());
  CHECK(f == frac(1, 240) * qmx::ramanujan_D(QMPoly::E4()));
  auto s = qmx::expand(f, 30);
  CHECK(s.q_coeff(0) == 0);
  CHECK(s.q_coeff(1) == 1);
  CHECK(s.q_coeff(2) == 18);
  CHECK(s.q_coeff(3) == 84);
  for (int n = 1; n < 30; ++n) CHECK(s.q_coeff(n) == Rational(n * oracle::sigma_brute(3, n)));
  CHECK(qmx::expand(QMPoly::constant(1), 5) == qmx::USeries::constant(1, 10));
}

TEST_CASE("expand commutes with the derivation") {
  std::mt19937_64 rng(21);
  qmx::Expander ex(25);
  for (int trial = 0; trial < 50; ++trial) {
    const int w = 2 * static_cast<int>(rng() % 9);
    const int l = static_cast<int>(rng() % 4);
    auto f = random_homogeneous(rng, w, l);
    CHECK(ex.expand(qmx::ramanujan_D(f)) == qmx::derive(ex.expand(f)));
    if (w > 0 && !f.is_zero()) {
      CHECK(qmx::ramanujan_D(f).weight() == w + 2);
      CHECK(*qmx::ramanujan_D(f).depth() <= *f.depth() + 1);
    }
  }
}

TEST_CASE("grading and depth") {
  const auto f = QMPoly::E2() * QMPoly::E4() + QMPoly::E6();
  CHECK(f.weight() == 6);
  CHECK(f.depth() == 1);
  CHECK_FALSE((QMPoly::E2() + QMPoly::E4()).weight().has_value());
  CHECK_FALSE(QMPoly().depth().has_value());
  CHECK((pow(QMPoly::E2(), 3) * QMPoly::E4()).partial_E2() == 3 * pow(QMPoly::E2(), 2) * QMPoly::E4());
}

TEST_CASE("dim_modular") {
  CHECK(qmx::dim_modular(2) == 0);
  CHECK(qmx::dim_modular(12) == 2);
  CHECK(qmx::dim_modular(-4) == 0);
  CHECK(qmx::dim_modular(0) == 1);
  CHECK(qmx::dim_modular(14) == 1);
  CHECK(qmx::dim_modular(7) == 0);
}

TEST_CASE("dim_qm") {
  for (int k = 0; k <= 10; ++k) {
    CHECK(qmx::dim_qm(1, 6 * k) == k + 1);
    CHECK(qmx::dim_qm(1, 6 * k + 4) == k + 1);
  }
  for (int w = -4; w <= 60; w += 2) CHECK(qmx::dim_qm(0, w) == qmx::dim_modular(w));
  CHECK(qmx::dim_qm(1, 14) == 3);
}

TEST_CASE("kappa: stable sequence and vanishing for l <= 4") {
  const int expected[] = {0, 0, 0, 0, 0, 1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 14, 16, 19};
  for (int l = 0; l < 18; ++l) CHECK(qmx::kappa_stable(l) == expected[l]);
  for (int l = 0; l <= 4; ++l) {
    for (int w = 0; w <= 200; w += 2) CHECK(qmx::kappa(l, w) == 0);
  }
  CHECK(qmx::kappa(5, 0) == 0);
  for (int l = 0; l <= 30; ++l) {
    int prev = qmx::kappa(l, 0);
    CHECK(prev >= 0);
    for (int w = 2; w <= 240; w += 2) {
      const int k = qmx::kappa(l, w);
      CHECK(k >= prev);
      if (w >= 2 * l + 12) CHECK(k == qmx::kappa_stable(l));
      prev = k;
    }
  }
}

TEST_CASE("the four dimension identities") {
  using qmx::dim_modular;
  for (int w = 0; w <= 400; w += 2) {
    const int d0 = dim_modular(w), d2 = dim_modular(w - 2), d4 = dim_modular(w - 4);
    const int d6 = dim_modular(w - 6), d8 = dim_modular(w - 8);
    CHECK(dim_modular(2 * w) == d0 + d2);
    CHECK(dim_modular(3 * w) == d0 + d2 + d4);
    CHECK(dim_modular(4 * w) == d0 + d2 + d4 + d6);
    CHECK(dim_modular(5 * w) == d0 + d2 + d4 + d6 + d8);
  }
}

TEST_CASE("a_count") {
  CHECK(qmx::a_count(0) == 1);
  CHECK(qmx::a_count(-3) == 0);
  CHECK(qmx::a_count(6) == 7);
  CHECK(qmx::a_count_literal(0) == 0);
  for (int n = 0; n <= 40; ++n) CHECK(qmx::a_count(n) == oracle::triples_brute(n));
  // kappa_l = a(l - 5).
  for (int l = 0; l < 30; ++l) CHECK(qmx::kappa_stable(l) == qmx::a_count(l - 5));
}

TEST_CASE("kappa_l(w) = a(l-5) - a(l-5-w/2) on the whole test grid") {
  for (int l = 0; l <= 30; ++l) {
    for (int w = 0; w <= 240; w += 2) {
      CHECK(qmx::kappa(l, w) == qmx::a_count(l - 5) - qmx::a_count(l - 5 - w / 2));
    }
  }
}

TEST_CASE("monomial_basis") {
  auto b = qmx::monomial_basis(0, 12);
  REQUIRE(b.size() == 2);
  CHECK(b[0] == QMPoly::monomial({0, 0, 2}));
  CHECK(b[1] == QMPoly::monomial({0, 3, 0}));
  auto b2 = qmx::monomial_basis(1, 2);
  REQUIRE(b2.size() == 1);
  CHECK(b2[0] == QMPoly::E2());
  auto b3 = qmx::monomial_basis(4, 0);
  REQUIRE(b3.size() == 1);
  CHECK(b3[0] == QMPoly::constant(1));
  for (int l = 0; l <= 8; ++l) {
    for (int w = 0; w <= 80; w += 2) {
      const auto basis = qmx::monomial_basis(l, w);
      CHECK(static_cast<int>(basis.size()) == qmx::dim_qm(l, w));
      CHECK(static_cast<int>(basis.size()) == oracle::monomials_brute(l, w));
      for (std::size_t i = 1; i < basis.size(); ++i) {
        CHECK(basis[i - 1].terms().begin()->first < basis[i].terms().begin()->first);
      }
    }
  }
}
