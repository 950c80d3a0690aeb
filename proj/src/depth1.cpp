#include "qmx/depth1.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>

#include "qmx/extremal.hpp"
#include "qmx/qmpoly.hpp"

namespace qmx {

namespace {

// Extra q-coefficients carried by operator coefficients so that they never
// limit the precision of a comparison.
constexpr int kOperatorMargin = 8;

std::vector<Integer> sigma3_table(int count) {
  std::vector<Integer> s(static_cast<std::size_t>(std::max(count, 1)));
  for (int n = 1; n < count; ++n) s[static_cast<std::size_t>(n)] = sigma_k(3, n);
  return s;
}

KSeries constant_series(USeries s) {
  return [s = std::move(s)](const Rational&) { return s; };
}

std::string describe_first_term(const USeries& s) {
  if (s.terms().empty()) return "zero";
  const auto& [e, c] = *s.terms().begin();
  return to_string(c) + " u^" + std::to_string(e);
}

}  // namespace

std::vector<Rational> c_sequence(const Rational& x, int count) {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(count, 0)));
  if (count <= 0) return c;
  c[0] = 1;
  const auto s3 = sigma3_table(count);
  const Rational scale = 240 * x * x;
  for (int n = 1; n < count; ++n) {
    const Rational denom = n * (n + 2 * x);
    if (denom == 0) {
      throw DomainError("c_n(x) has a pole: n + 2x = 0 at n = " + std::to_string(n) + ", x = " + to_string(x));
    }
    Rational sum;
    for (int i = 1; i <= n; ++i) sum += Rational(s3[static_cast<std::size_t>(i)]) * c[static_cast<std::size_t>(n - i)];
    c[static_cast<std::size_t>(n)] = scale * sum / denom;
  }
  return c;
}

Rational c_coeff(const Rational& x, int n) {
  if (n < 0) throw DomainError("c_n needs n >= 0");
  return c_sequence(x, n + 1).back();
}

USeries g_series(int i, int q_prec) {
  if (i < 0) throw DomainError("g_i needs i >= 0");
  return shift(USeries::from_q_coefficients(c_sequence(frac(i, 2), q_prec)), i);
}

Rational mu(const Rational& k) {
  const Rational denom = 12 * (7 + 6 * k) * (11 + 6 * k);
  if (denom == 0) throw DomainError("mu(k) has a pole at k = " + to_string(k));
  return (1 + k) * (2 + k) / denom;
}

std::shared_ptr<const SeriesKit> series_kit(int q_prec) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SeriesKit>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(q_prec); it != cache.end()) return it->second;
  auto kit = std::make_shared<SeriesKit>();
  kit->q_prec = q_prec;
  Expander ex(q_prec);
  kit->E2 = ex.expand(QMPoly::E2());
  kit->E4 = ex.expand(QMPoly::E4());
  kit->E6 = ex.expand(QMPoly::E6());
  kit->DE2 = derive(kit->E2);
  kit->delta = ex.expand(delta_form());
  kit->delta_sqrt = sqrt_normalized(kit->delta);
  kit->delta_inv_sqrt = invert(kit->delta_sqrt);
  return cache.emplace(q_prec, std::move(kit)).first->second;
}

USeries contiguity_step(const USeries& g_i, const USeries& g_i1, int i, const MuFunction& mu_fn) {
  const int need = std::max(g_i.exact() ? 0 : g_i.prec(), g_i1.exact() ? 0 : g_i1.prec());
  const auto kit = series_kit(need / 2 + 3);
  return mu_fn(Rational(i)) * (g_i - kit->E6 * kit->delta_inv_sqrt * g_i1);
}

std::vector<USeries> g_series_by_contiguity(int n, int q_prec, const MuFunction& mu_fn) {
  // Each step loses about one u of precision; start with margin.
  const int start = q_prec + n + 2;
  std::vector<USeries> g{g_series(0, start), g_series(1, start)};
  for (int i = 0; i + 2 <= n; ++i) {
    g.push_back(contiguity_step(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(i + 1)], i, mu_fn));
  }
  g.resize(static_cast<std::size_t>(std::max(n + 1, 0)));
  for (int i = 0; i <= n; ++i) {
    auto& s = g[static_cast<std::size_t>(i)];
    if (s.prec() < i + 2 * q_prec) {
      throw PrecisionError("increase precision: contiguity lost too much precision at i = " + std::to_string(i));
    }
    s = s.truncated(i + 2 * q_prec);
  }
  return g;
}

USeries ode_residual(int k, int q_prec) {
  if (k < 0) throw DomainError("ode_residual needs k >= 0");
  const auto kit = series_kit(q_prec);
  const USeries g = g_series(k, q_prec);
  return derive(derive(g)) - frac(k * k, 4) * kit->E4 * g;
}

USeries kk_ode_residual(int w, int q_prec) {
  if (w < 0 || w % 6 != 0) throw DomainError("kk_ode_residual needs w in 6N");
  const QMPoly f = numax_and_form(1, w).form_poly;
  const QMPoly Df = ramanujan_D(f);
  const QMPoly residual = ramanujan_D(Df) - frac(w, 6) * QMPoly::E2() * Df +
                          frac(w * (w - 1), 12) * ramanujan_D(QMPoly::E2()) * f;
  return expand(residual, q_prec);
}

USeries conjugation_residual(const USeries& X, const Rational& k, int q_prec) {
  const auto kit = series_kit(q_prec + 1);
  const USeries delta_over_q = shift(kit->delta, -2);
  const USeries p_minus = pow_unit(delta_over_q, -k / 2);
  const USeries p_plus = pow_unit(delta_over_q, k / 2);

  OreElement y({{-1, p_minus * X}}, k);
  const OreElement d2 = derive(derive(y));
  const OreElement ey = d2 - (k * k / 4) * kit->E4 * y;
  const USeries rhs = p_plus * ey.part(-1);

  const Rational w = 6 * k;
  const USeries DX = derive(X);
  const USeries lhs = derive(DX) - (w / 6) * kit->E2 * DX + (w * (w - 1) / 12) * kit->DE2 * X;
  return lhs - rhs;
}

FamilyElement phi2_family(int q_prec) {
  return FamilyElement([q_prec](const Rational& k) {
    return OreElement({{1, USeries::from_q_coefficients(c_sequence(k / 2, q_prec))}}, k);
  });
}

FamilyElement phi1_family(int q_prec) {
  return FamilyElement([q_prec](const Rational& k) {
    return OreElement({{-1, USeries::from_q_coefficients(c_sequence(-k / 2, q_prec))}}, k);
  });
}

OreOperator op_E(int q_prec, int shift_k) {
  const auto kit = series_kit(q_prec);
  USeries e4 = kit->E4;
  return OreOperator({{constant_series(USeries::constant(1)), 2, 0},
                      {[e4, shift_k](const Rational& k) {
                         const Rational s = k + shift_k;
                         return -(s * s / 4) * e4;
                       },
                       0, 0}});
}

OreOperator op_F(int q_prec) {
  const auto kit = series_kit(q_prec);
  const USeries a = kit->delta_inv_sqrt * kit->E2 * kit->E4;
  const USeries b = kit->delta_inv_sqrt * kit->E6;
  const USeries c = 12 * (kit->delta_inv_sqrt * kit->E4);
  return OreOperator({{[a, b](const Rational& k) { return a + (5 + 6 * k) * b; }, 0, 1},
                      {constant_series(c), 1, 1}});
}

OreOperator op_G(int q_prec, const MuFunction& mu_fn) {
  const auto kit = series_kit(q_prec);
  const USeries r = kit->E6 * kit->delta_inv_sqrt;
  return OreOperator({{constant_series(USeries::constant(1)), 0, 2},
                      {[mu_fn](const Rational& k) { return USeries::constant(-mu_fn(k)); }, 0, 0},
                      {[mu_fn, r](const Rational& k) { return mu_fn(k) * r; }, 0, 1}});
}

Comparison compare(const OreElement& a, const OreElement& b) {
  Comparison c;
  const OreElement diff = a - b;
  c.compared_prec = diff.prec();
  for (const auto& [m, s] : diff.parts()) {
    if (!s.is_zero()) {
      c.equal = false;
      c.counterexample = "Y^" + std::to_string(m) + ": " + describe_first_term(s) + " at k = " + to_string(a.k());
      break;
    }
  }
  return c;
}

EigenReport eigen_check(const Rational& k, int q_prec) {
  const auto phi = phi2_family(q_prec);
  const OreElement value = op_F(q_prec + kOperatorMargin).apply_at(phi, k);
  const OreElement base = phi.at(k);
  EigenReport rep;
  rep.k = k;
  rep.raw = value.part(1).coeff(0) / base.part(1).coeff(0);
  rep.normalized = rep.raw / 12;
  const auto cmp = compare(value, rep.raw * USeries::constant(1) * base);
  rep.compared_prec = cmp.compared_prec;
  if (!cmp.equal) throw InvariantError("F(phi_2) is not a multiple of phi_2: residual " + cmp.counterexample);
  return rep;
}

FamilyElement random_family(std::mt19937_64& rng, int q_prec) {
  struct Term {
    int e;
    Rational c0, c1, c2;
  };
  std::map<int, std::vector<Term>> data;
  std::uniform_int_distribution<int> m_dist(-2, 2);
  std::uniform_int_distribution<int> e_dist(-2, 6);
  std::uniform_int_distribution<int> r_dist(-9, 9);
  std::uniform_int_distribution<int> d_dist(1, 5);
  auto rational = [&] { return frac(r_dist(rng), d_dist(rng)); };
  const int parts = 1 + static_cast<int>(rng() % 3);
  for (int p = 0; p < parts; ++p) {
    auto& terms = data[m_dist(rng)];
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int t = 0; t < count; ++t) terms.push_back({e_dist(rng), rational(), rational(), rational()});
  }
  const int prec = 2 * q_prec + 2 * kOperatorMargin;
  return FamilyElement([data, prec](const Rational& k) {
    OreElement::Parts parts;
    for (const auto& [m, terms] : data) {
      std::map<int, Rational> coeffs;
      for (const auto& t : terms) coeffs[t.e] += t.c0 + t.c1 * k + t.c2 * k * k;
      parts.emplace(m, USeries(std::move(coeffs), prec));
    }
    return OreElement(std::move(parts), k);
  });
}

namespace {

// Applies both operators to every random element at every k.
Comparison check_identity(const OreOperator& lhs, const OreOperator& rhs, const std::vector<FamilyElement>& xs,
                          const std::vector<Rational>& ks) {
  Comparison total;
  total.compared_prec = USeries::kExact;
  for (const auto& x : xs) {
    for (const auto& k : ks) {
      const auto c = compare(lhs.apply_at(x, k), rhs.apply_at(x, k));
      total.compared_prec = std::min(total.compared_prec, c.compared_prec);
      if (!c.equal && total.equal) {
        total.equal = false;
        total.counterexample = c.counterexample;
      }
    }
  }
  return total;
}

std::vector<FamilyElement> random_families(std::uint64_t seed, int trials, int q_prec) {
  std::mt19937_64 rng(seed);
  std::vector<FamilyElement> xs;
  for (int t = 0; t < trials; ++t) xs.push_back(random_family(rng, q_prec));
  return xs;
}

void require_precision(const Comparison& c, int q_prec, const char* what) {
  if (c.compared_prec < 2 * q_prec) {
    throw PrecisionError(std::string("increase precision: ") + what + " compared only to u^" +
                         std::to_string(c.compared_prec));
  }
}

KSeries k_scalar(std::function<Rational(const Rational&)> f) {
  return [f = std::move(f)](const Rational& k) { return USeries::constant(f(k)); };
}

}  // namespace

LaxReport lax_check_1(const std::vector<Rational>& ks, int q_prec, int trials, std::uint64_t seed) {
  const int p = q_prec + kOperatorMargin;
  const auto kit = series_kit(p);
  const OreOperator E = op_E(p);
  const OreOperator F = op_F(p);
  const USeries c = 4 * (kit->delta_inv_sqrt * (kit->E2 * kit->E4 + 2 * kit->E6));
  const OreOperator lhs = F * E - E * F;
  const OreOperator rhs = OreOperator({{constant_series(c), 0, 1}}) * E;

  const auto xs = random_families(seed, trials, q_prec);
  const auto cmp = check_identity(lhs, rhs, xs, ks);
  require_precision(cmp, q_prec, "lax_check_1");
  LaxReport rep;
  rep.holds = cmp.equal;
  rep.trials = trials;
  rep.k_samples = static_cast<int>(ks.size());
  rep.min_compared_prec = cmp.compared_prec;
  rep.counterexample = cmp.counterexample;
  return rep;
}

LaxReport lax_check_2(const std::vector<Rational>& ks, int q_prec, int trials, std::uint64_t seed,
                      const MuFunction& mu_fn) {
  const int p = q_prec + kOperatorMargin;
  const auto kit = series_kit(p);
  const OreOperator E = op_E(p);
  const OreOperator E2 = op_E(p, 2);
  const OreOperator F = op_F(p);
  const USeries e4 = kit->E4;
  // E4 (F/12 - (k+1))
  const OreOperator core =
      OreOperator::scalar(constant_series(e4)) *
      (OreOperator::scalar(k_scalar([](const Rational&) { return frac(1, 12); })) * F -
       OreOperator::scalar(k_scalar([](const Rational& k) { return Rational(k + 1); })));

  const auto xs = random_families(seed, trials, q_prec);
  auto run = [&](const MuFunction& m, int sign) {
    const OreOperator G = op_G(p, m);
    const OreOperator lhs = E2 * G - G * E;
    const OreOperator rhs =
        OreOperator::scalar(k_scalar([m, sign](const Rational& k) -> Rational { return sign * m(k); })) * core;
    return check_identity(lhs, rhs, xs, ks);
  };

  const auto corrected = run(mu_fn, -1);
  require_precision(corrected, q_prec, "lax_check_2");
  const auto with_one = run([](const Rational&) { return Rational(1); }, -1);
  const auto literal = run(mu_fn, +1);

  LaxReport rep;
  rep.holds = corrected.equal && with_one.equal;
  rep.trials = trials;
  rep.k_samples = static_cast<int>(ks.size());
  rep.min_compared_prec = std::min(corrected.compared_prec, with_one.compared_prec);
  rep.counterexample = !corrected.equal ? corrected.counterexample : with_one.counterexample;
  rep.holds_mu_one = with_one.equal;
  rep.literal_sign_holds = literal.equal;
  return rep;
}

OreElement g_mu_phi2(const Rational& k, const Rational& mu_value, int q_prec) {
  const auto G = op_G(q_prec + kOperatorMargin, [mu_value](const Rational&) { return mu_value; });
  return G.apply_at(phi2_family(q_prec), k);
}

std::vector<Integer> denominator_primes(const USeries& s) {
  Integer l = 1;
  for (const auto& [e, c] : s.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return prime_factors(l);
}

USeries f_1_6k(int k, int q_prec) {
  if (k < 0) throw DomainError("f_{1,6k} needs k >= 0");
  const auto kit = series_kit(q_prec + 1);
  const USeries f = pow(kit->delta_sqrt, static_cast<unsigned>(k)) * g_series(k, q_prec);
  return f.truncated(2 * q_prec);
}

std::vector<Rational> default_k_samples() {
  return {frac(1, 2), frac(3, 7), frac(5, 3), frac(11, 4), frac(-1, 3)};
}

}  // namespace qmx
