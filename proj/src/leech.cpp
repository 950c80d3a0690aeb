#include "qmx/leech.hpp"

#include <string>

#include "qmx/extremal.hpp"
#include "qmx/qmpoly.hpp"

namespace qmx {

namespace {

const Rational kE12Scale = frac(65520, 691);

bool divides(const Integer& d, const Integer& n) { return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0; }

}  // namespace

USeries e12(int q_prec) {
  if (q_prec < 0) throw DomainError("negative precision");
  std::vector<Rational> c(static_cast<std::size_t>(q_prec));
  if (q_prec > 0) c[0] = 1;
  for (int n = 1; n < q_prec; ++n) c[static_cast<std::size_t>(n)] = kE12Scale * Rational(sigma_k(11, n));
  return USeries::from_q_coefficients(c);
}

USeries theta_leech(int q_prec) {
  const USeries theta = e12(q_prec) - kE12Scale * expand(delta_form(), q_prec);
  for (const auto& [e, c] : theta.terms()) {
    if (c.get_den() != 1 || c < 0) {
      throw InvariantError("theta coefficient at q^" + std::to_string(e / 2) + " is " + to_string(c) +
                           ", not a non-negative integer");
    }
  }
  return theta;
}

USeries f_1_14(int q_prec) {
  const Rational scale = 1 / Rational(kLeechA);
  const USeries f = scale * derive(theta_leech(q_prec));
  ExtremalOptions opts;
  opts.q_prec = std::max(q_prec, dim_qm(1, 14) + 1);
  const auto ext = numax_and_form(1, 14, opts);
  const int shared = std::min(f.prec(), ext.expansion.prec());
  if (!agree_below(f, ext.expansion, shared)) {
    throw InvariantError("D(theta)/393120 differs from the extremal f_{1,14}");
  }
  return f;
}

ThetaReport divisibility_scan(int a_max) {
  if (a_max < 1) throw DomainError("divisibility_scan needs a_max >= 1");
  ThetaReport rep;
  rep.prec = a_max + 1;
  const USeries theta = theta_leech(rep.prec);
  const USeries f = f_1_14(rep.prec);
  for (const auto& [e, c] : f.terms()) {
    if (c.get_den() != 1) rep.f114_integral = false;
    if (c < 0) rep.f114_nonnegative = false;
  }
  auto fail = [&rep](bool& flag, const std::string& what, int a) {
    flag = false;
    rep.failures.push_back(what + " fails at shell a = " + std::to_string(a));
  };
  for (int a = 0; a <= a_max; ++a) {
    const Integer size = theta.q_coeff(a).get_num();
    rep.shells.emplace_back(a, size);
    if (a == 0) continue;
    const Integer weighted = size * a;
    if (!divides(kLeechA, weighted)) fail(rep.divisibility_ok, "393120 | a|L_a|", a);
    if (!divides(455, size)) fail(rep.div_5_7_13, "5*7*13 | |L_a|", a);
    if (!divides(9, size)) fail(rep.div_9, "9 | |L_a|", a);
    if (!divides(27, weighted)) fail(rep.div_27, "27 | a|L_a|", a);
    if (!divides(32, weighted)) fail(rep.div_32, "32 | a|L_a|", a);
  }
  return rep;
}

}  // namespace qmx
