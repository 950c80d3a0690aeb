#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "qmx/qmpoly.hpp"
#include "qmx/useries.hpp"

using qmx::Rational;
using qmx::USeries;

namespace {

USeries q_poly(std::initializer_list<Rational> coeffs) {
  std::map<int, Rational> t;
  int n = 0;
  for (const auto& c : coeffs) t[2 * n++] = c;
  return USeries(std::move(t), USeries::kExact);
}

USeries delta_series(int q_prec) { return qmx::expand(qmx::delta_form(), q_prec); }

}  // namespace

TEST_CASE("add cancels and keeps the smaller precision") {
  auto a = USeries({{0, 1}, {2, 1}}, 10);
  auto b = USeries({{0, 1}, {2, -1}}, 8);
  auto s = a + b;
  CHECK(s.terms() == std::map<int, Rational>{{0, 2}});
  CHECK(s.prec() == 8);
  CHECK(a + USeries() == a);
}

TEST_CASE("E4 + E6 q-coefficient") {
  auto s = qmx::eisenstein(qmx::Eisenstein::E4, 6) + qmx::eisenstein(qmx::Eisenstein::E6, 6);
  CHECK(s.q_coeff(1) == -264);
  CHECK(s.q_coeff(0) == 2);
}

TEST_CASE("mul: exponent arithmetic and truncation") {
  auto u = USeries::monomial(1, 1);
  CHECK(u * u == USeries::monomial(1, 2));
  CHECK(q_poly({1, 1}) * q_poly({1, -1}) == q_poly({1, 0, -1}));

  // Only exact coefficients survive: O(u^10) times u^3 is O(u^13).
  auto a = USeries({{0, 1}, {4, 3}}, 10);
  auto b = USeries({{3, 2}}, USeries::kExact);
  CHECK((a * b).prec() == 13);
  auto c = USeries({{0, 1}, {2, 1}}, 6);
  CHECK((a * c).prec() == 6);
}

TEST_CASE("E4^3 - E6^2 against the product formula") {
  const int n = 30;
  auto e4 = qmx::eisenstein(qmx::Eisenstein::E4, n);
  auto e6 = qmx::eisenstein(qmx::Eisenstein::E6, n);
  auto diff = pow(e4, 3) - e6 * e6;
  CHECK(diff.q_coeff(0) == 0);
  CHECK(diff.q_coeff(1) == 1728);
  CHECK(diff.q_coeff(2) == -41472);
  const auto tau = oracle::delta_product(n);
  for (int k = 0; k < n; ++k) {
    CHECK(diff.q_coeff(k) == Rational(1728 * tau[static_cast<std::size_t>(k)]));
  }
  CHECK(tau[1] == 1);
  CHECK(tau[2] == -24);
}

TEST_CASE("invert") {
  CHECK(invert(USeries::constant(1)) == USeries::constant(1));
  auto g = invert(q_poly({1, -1}), 20);
  for (int k = 0; k < 10; ++k) CHECK(g.q_coeff(k) == 1);
  CHECK(g.prec() == 20);
  CHECK_THROWS_AS(invert(USeries::zero(10)), qmx::DomainError);
  CHECK_THROWS_AS(invert(USeries()), qmx::DomainError);

  auto root = sqrt_normalized(delta_series(20));
  auto inv = invert(root);
  CHECK(inv.valuation() == -1);
  CHECK(inv.coeff(-1) == 1);
  CHECK(inv.coeff(1) == 12);
}

TEST_CASE("sqrt_normalized") {
  CHECK(sqrt_normalized(USeries::monomial(1, 2)) == USeries::monomial(1, 1));
  auto r = sqrt_normalized(q_poly({1, 2, 1}), 20);
  CHECK(r.truncated(20) == USeries({{0, 1}, {2, 1}}, 20));
  auto d = sqrt_normalized(delta_series(20));
  CHECK(d.coeff(1) == 1);
  CHECK(d.coeff(3) == -12);
  CHECK_THROWS_AS(sqrt_normalized(USeries::monomial(2, 0)), qmx::DomainError);
  CHECK_THROWS_AS(sqrt_normalized(USeries::monomial(1, 1)), qmx::DomainError);
  CHECK(sqrt_normalized(USeries::monomial(Rational(9, 4), 0)) == USeries::constant(Rational(3, 2)));
}

TEST_CASE("derive") {
  CHECK(derive(USeries::monomial(1, 6)) == USeries::monomial(3, 6));
  CHECK(derive(USeries::monomial(1, 1)) == USeries::monomial(Rational(1, 2), 1));
  CHECK(derive(USeries::constant(7)).is_zero());
}

TEST_CASE("valuation") {
  auto s = USeries({{6, 1}, {10, 1}}, USeries::kExact);
  CHECK(s.q_valuation() == 3);
  CHECK(s.valuation() == 6);
  CHECK_FALSE(USeries().valuation().has_value());
  CHECK(delta_series(5).q_valuation() == 1);
}

TEST_CASE("sigma_k") {
  CHECK(qmx::sigma_k(1, 1) == 1);
  CHECK(qmx::sigma_k(3, 2) == 9);
  CHECK(qmx::sigma_k(5, 3) == 244);
  CHECK_THROWS_AS(qmx::sigma_k(1, 0), qmx::DomainError);
  for (unsigned k : {0U, 1U, 3U, 5U, 11U}) {
    for (long n = 1; n <= 60; ++n) CHECK(qmx::sigma_k(k, n) == oracle::sigma_brute(k, n));
  }
}

TEST_CASE("coefficient beyond precision is an error") {
  auto s = USeries({{0, 1}}, 4);
  CHECK(s.coeff(3) == 0);
  CHECK_THROWS_AS(s.coeff(4), qmx::PrecisionError);
}

TEST_CASE("ring properties on random truncated series") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = oracle::random_series(rng, -2, 8, 14);
    auto b = oracle::random_series(rng, 0, 9, 16);
    auto c = oracle::random_series(rng, 1, 6, 12);
    auto lhs = (a * b) * c;
    auto rhs = a * (b * c);
    CHECK(lhs.prec() == rhs.prec());
    CHECK(lhs == rhs);
    auto d1 = a * (b + c);
    auto d2 = a * b + a * c;
    const int p = std::min(d1.prec(), d2.prec());
    CHECK(d1.truncated(p) == d2.truncated(p));
    CHECK(a * b == b * a);
  }
}

TEST_CASE("invert then multiply is one, for random unit series") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const int v = static_cast<int>(rng() % 5) - 2;
    auto a = oracle::random_series(rng, v, 7, v + 12);
    auto prod = a * invert(a);
    CHECK(prod.prec() == 12);
    CHECK(prod.truncated(prod.prec()) == USeries::constant(1, prod.prec()));
  }
}

TEST_CASE("sqrt squared returns the input") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const int v = 2 * static_cast<int>(rng() % 3);
    auto a = oracle::random_series(rng, v, 8, v + 14);
    std::map<int, Rational> t = a.terms();
    t[v] = Rational(4, 9);
    a = USeries(t, a.prec());
    auto r = sqrt_normalized(a);
    CHECK(r.coeff(v / 2) == Rational(2, 3));
    auto sq = r * r;
    CHECK(sq == a.truncated(sq.prec()));
    CHECK(sq.prec() == a.prec());
  }
}

TEST_CASE("derive is a derivation") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = oracle::random_series(rng, -1, 8, 15);
    auto b = oracle::random_series(rng, 2, 8, 18);
    auto lhs = derive(a * b);
    auto rhs = derive(a) * b + a * derive(b);
    CHECK(lhs == rhs.truncated(lhs.prec()));
  }
}

TEST_CASE("valuation is additive") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 40; ++trial) {
    auto a = oracle::random_series(rng, static_cast<int>(rng() % 6) - 3, 5, 12);
    auto b = oracle::random_series(rng, static_cast<int>(rng() % 6), 5, 14);
    CHECK((a * b).valuation() == *a.valuation() + *b.valuation());
  }
}
