#include "doctest.h"
#include "oracles.hpp"
#include "qmx/extremal.hpp"
#include "qmx/leech.hpp"

using qmx::frac;
using qmx::Rational;

TEST_CASE("e12") {
  auto e = qmx::e12(10);
  CHECK(e.q_coeff(0) == 1);
  CHECK(e.q_coeff(1) == frac(65520, 691));
  CHECK(e.q_coeff(2) == frac(65520, 691) * 2049);
}

TEST_CASE("theta series of the Leech lattice") {
  const int n = 60;
  auto theta = qmx::theta_leech(n);
  CHECK(theta.q_coeff(0) == 1);
  CHECK(theta.q_coeff(1) == 0);
  CHECK(theta.q_coeff(2) == 196560);
  CHECK(theta.q_coeff(3) == 16773120);
  CHECK(theta.q_coeff(4) == 398034000);
  // (65520/691)(sigma_11(a) - tau(a)) with tau from the product formula.
  const auto tau = oracle::delta_product(n);
  for (int a = 1; a < n; ++a) {
    const Rational expected = frac(65520, 691) * Rational(oracle::sigma_brute(11, a) - tau[static_cast<std::size_t>(a)]);
    CHECK(theta.q_coeff(a) == expected);
  }
}

TEST_CASE("f_{1,14} = D(theta)/393120") {
  auto f = qmx::f_1_14(120);
  CHECK(f.q_valuation() == 2);
  CHECK(f.q_coeff(2) == 1);
  for (const auto& [e, c] : f.terms()) {
    CHECK(c.get_den() == 1);
    CHECK(c > 0);
  }
  auto ext = qmx::numax_and_form(1, 14);
  CHECK(ext.nu == 2);
  CHECK(qmx::agree_below(f, ext.expansion, ext.expansion.prec()));
}

TEST_CASE("divisibility_scan") {
  auto rep = qmx::divisibility_scan(100);
  CHECK(rep.prec == 101);
  CHECK(rep.divisibility_ok);
  CHECK(rep.f114_integral);
  CHECK(rep.f114_nonnegative);
  CHECK(rep.div_5_7_13);
  CHECK(rep.div_9);
  CHECK(rep.div_27);
  CHECK(rep.div_32);
  CHECK(rep.failures.empty());
  REQUIRE(rep.shells.size() == 101);
  CHECK(rep.shells[0].second == 1);
  CHECK(rep.shells[1].second == 0);
  CHECK(rep.shells[2].second * 2 == qmx::kLeechA);
  CHECK_THROWS_AS(qmx::divisibility_scan(0), qmx::DomainError);
}
