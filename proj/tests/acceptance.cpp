// Acceptance suite: one PASS/FAIL line per criterion. Reference values come
// from the brute-force oracles and the plain-vector arithmetic below, not
// from the library's series code.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qmx/depth1.hpp"
#include "qmx/dims.hpp"
#include "qmx/extremal.hpp"
#include "qmx/leech.hpp"
#include "qmx/verify.hpp"
#include "qmx/wronskian.hpp"

using qmx::frac;
using qmx::QMPoly;
using qmx::Rational;
using qmx::USeries;
using Vec = std::vector<Rational>;

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

std::string cell(int l, int w) { return "(" + std::to_string(l) + "," + std::to_string(w) + ")"; }

// Truncated q-series as plain coefficient vectors.
Vec mul(const Vec& a, const Vec& b) {
  Vec c(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Vec eisenstein_brute(unsigned power, long scale, int n) {
  Vec v(static_cast<std::size_t>(n), 0);
  v[0] = 1;
  for (int m = 1; m < n; ++m) v[static_cast<std::size_t>(m)] = scale * Rational(oracle::sigma_brute(power, m));
  return v;
}

// Evaluates polynomials in E2, E4, E6 by repeated convolution.
class BruteExpander {
 public:
  explicit BruteExpander(int n)
      : n_(n), base_{eisenstein_brute(1, -24, n), eisenstein_brute(3, 240, n), eisenstein_brute(5, -504, n)} {}

  Vec monomial(const qmx::Exponents& e) {
    Vec v = power(0, e.e2);
    v = mul(v, power(1, e.e4));
    return mul(v, power(2, e.e6));
  }

  Vec expand(const QMPoly& f) {
    Vec out(static_cast<std::size_t>(n_), 0);
    for (const auto& [e, c] : f.terms()) {
      const Vec m = monomial(e);
      for (int i = 0; i < n_; ++i) out[static_cast<std::size_t>(i)] += c * m[static_cast<std::size_t>(i)];
    }
    return out;
  }

 private:
  const Vec& power(int which, int k) {
    auto& list = powers_[which];
    if (list.empty()) {
      Vec one(static_cast<std::size_t>(n_), 0);
      one[0] = 1;
      list.push_back(one);
    }
    while (static_cast<int>(list.size()) <= k) list.push_back(mul(list.back(), base_[which]));
    return list[static_cast<std::size_t>(k)];
  }

  int n_;
  Vec base_[3];
  std::vector<Vec> powers_[3];
};

int valuation(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

// Rank over Q by plain Gauss-Jordan.
int rank(std::vector<Vec> m) {
  int r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && r < static_cast<int>(m.size()); ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[static_cast<std::size_t>(r)]);
    const auto& pivot = m[static_cast<std::size_t>(r)];
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == static_cast<std::size_t>(r) || m[i][c] == 0) continue;
      const Rational f = m[i][c] / pivot[c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * pivot[j];
    }
    ++r;
  }
  return r;
}

int dim_brute(int w) { return w < 0 ? 0 : oracle::monomials_brute(0, w); }

// Coefficients c_j of g_i = u^i sum c_j q^j, from D^2 g = (i^2/4) E4 g with
// D(u^i q^j) = (i/2 + j) u^i q^j, i.e. j (j + i) c_j = 60 i^2 sum sigma_3(m) c_{j-m}.
Vec g_brute(int i, int n) {
  Vec c(static_cast<std::size_t>(n), 0);
  c[0] = 1;
  for (int j = 1; j < n; ++j) {
    Rational s = 0;
    for (int m = 1; m <= j; ++m) s += Rational(oracle::sigma_brute(3, m)) * c[static_cast<std::size_t>(j - m)];
    c[static_cast<std::size_t>(j)] = Rational(60 * i * i) * s / Rational(j * (j + i));
  }
  return c;
}

Vec to_vec(const USeries& s, int n) {
  Vec v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = s.q_coeff(i);
  return v;
}

// Strips every prime below `bound` from d; the rest is 1 iff all primes of d are below bound.
bool primes_below(mpz_class d, long bound) {
  for (long p = 2; p < bound; ++p) {
    while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)) != 0) d /= p;
  }
  return d == 1;
}

// ----------------------------------------------------------------------------

std::string eisenstein_sanity() {
  const int n = 201;
  const struct {
    qmx::Eisenstein which;
    unsigned power;
    long scale;
  } cases[] = {{qmx::Eisenstein::E2, 1, -24}, {qmx::Eisenstein::E4, 3, 240}, {qmx::Eisenstein::E6, 5, -504}};
  for (const auto& c : cases) {
    const USeries e = qmx::eisenstein(c.which, n);
    expect(to_vec(e, n) == eisenstein_brute(c.power, c.scale, n), "sigma_" + std::to_string(c.power) + " series");
  }
  return "E2, E4, E6 through q^200";
}

std::string kappa_sequence() {
  const int expected[] = {0, 0, 0, 0, 0, 1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 14, 16, 19};
  for (int l = 0; l < 18; ++l) {
    expect(qmx::kappa_stable(l) == expected[l], "kappa_" + std::to_string(l));
    const int w = 2 * l + 12;
    const int brute = dim_brute((l + 1) * w) - oracle::monomials_brute(l, w);
    expect(brute == expected[l], "brute-force kappa_" + std::to_string(l));
  }
  for (int l = 0; l <= 4; ++l) {
    for (int w = 0; w <= 200; w += 2) {
      expect(qmx::kappa(l, w) == 0, "kappa " + cell(l, w));
      expect(dim_brute((l + 1) * w) == oracle::monomials_brute(l, w), "brute-force kappa " + cell(l, w));
    }
  }
  return "kappa_0..17 and kappa_l(w) = 0 for l <= 4, w <= 200";
}

std::string vanishing_orders() {
  int cells = 0, slack = 0;
  for (int l = 0; l <= 8; ++l) {
    const int w_max = l <= 4 ? 120 : 60;
    for (int w = 2 * l; w <= w_max; w += 2) {
      if (!qmx::valid_cell(l, w)) continue;
      const int delta = oracle::monomials_brute(l, w);
      if (delta == 0) continue;
      ++cells;
      const auto r = qmx::numax_and_form(l, w);
      const int kappa = dim_brute((l + 1) * w) - delta;
      BruteExpander ex(r.nu + 1);
      const Vec f = ex.expand(r.form_poly);
      expect(valuation(f) == r.nu && f[static_cast<std::size_t>(r.nu)] == 1, "normalized form " + cell(l, w));
      if (l <= 4) {
        expect(r.nu == delta - 1, "nu " + cell(l, w));
        // Nothing vanishes to order delta: the delta x delta leading block of
        // the monomial basis is invertible.
        BruteExpander sq(delta);
        std::vector<Vec> rows;
        for (const auto& m : qmx::monomial_basis(l, w)) rows.push_back(sq.expand(m));
        expect(rank(rows) == delta, "leading block singular " + cell(l, w));
      } else {
        expect(delta - 1 <= r.nu && r.nu <= delta - 1 + kappa, "bounds " + cell(l, w));
        if (r.nu > delta - 1) ++slack;
      }
    }
  }
  return std::to_string(cells) + " cells; " + std::to_string(slack) + " with nu > delta - 1";
}

QMPoly random_form(std::mt19937_64& rng, int l, int w, int start) {
  const auto basis = qmx::diagonal_basis(l, w);
  QMPoly f;
  for (std::size_t i = static_cast<std::size_t>(start); i < basis.size(); ++i) f = f + oracle::random_rational(rng) * basis[i];
  if (f.is_zero()) f = basis.back();
  return f;
}

qmx::ZQMPoly D(const qmx::ZQMPoly& p) { return qmx::ramanujan_D(p); }

std::string wronskians() {
  expect(qmx::wronskian(QMPoly::E2(), 1) == qmx::ZQMPoly(-QMPoly::E4(), -1), "W(E2) != -E4/(2 pi i)");
  std::mt19937_64 rng(7);
  int done = 0;
  while (done < 30) {
    const int l = static_cast<int>(rng() % 4);
    const int w = 2 * l + 2 * static_cast<int>(rng() % 7);
    const int delta = oracle::monomials_brute(l, w);
    if (delta == 0) continue;
    const QMPoly f = random_form(rng, l, w, static_cast<int>(rng() % static_cast<unsigned>(delta)));
    const auto W = qmx::wronskian(f, l);
    const std::string at = "trial " + std::to_string(done) + " " + cell(l, w);
    expect(W.is_Z_free() && W.is_E2_free(), at + ": Z or E2 remains");
    const QMPoly g = W.coeff(0);
    expect(g.is_homogeneous() && g.weight() == (l + 1) * w, at + ": weight");
    const int d = dim_brute((l + 1) * w);
    BruteExpander ex(d + 1);
    const int nu_W = valuation(ex.expand(g));
    const int nu_f = valuation(BruteExpander(delta + 1).expand(f));
    expect(nu_W >= 0 && nu_W >= nu_f, at + ": nu(W) < nu(f)");
    if (l == 1 || l == 2) {
      const auto F = qmx::f_vector(f, l);
      qmx::ZQMPoly det;
      if (l == 1) {
        det = F[0] * D(F[1]) - D(F[0]) * F[1];
      } else {
        const auto &a = F[0], &b = F[1], &c = F[2];
        const auto a1 = D(a), b1 = D(b), c1 = D(c), a2 = D(a1), b2 = D(b1), c2 = D(c1);
        det = a * (b1 * c2 - b2 * c1) - b * (a1 * c2 - a2 * c1) + c * (a1 * b2 - a2 * b1);
      }
      expect(det == W, at + ": differs from the cofactor expansion");
    }
    ++done;
  }
  return "anchor exact; 30 random Wronskians";
}

std::string odes() {
  const int n = 40;
  const Vec e4 = eisenstein_brute(3, 240, n);
  for (int k = 0; k <= 12; ++k) {
    expect(qmx::ode_residual(k, n).is_zero(), "library residual k = " + std::to_string(k));
    const Vec c = g_brute(k, n);
    const USeries g = qmx::g_series(k, n);
    for (int j = 0; j < n; ++j) expect(g.coeff(k + 2 * j) == c[static_cast<std::size_t>(j)], "g_" + std::to_string(k));
  }
  const Vec e2 = eisenstein_brute(1, -24, n);
  Vec de2(e2);
  for (int j = 0; j < n; ++j) de2[static_cast<std::size_t>(j)] *= j;
  for (int w = 0; w <= 72; w += 6) {
    expect(qmx::kk_ode_residual(w, n).is_zero(), "library residual w = " + std::to_string(w));
    const auto r = qmx::numax_and_form(1, w);
    const Vec f = BruteExpander(n).expand(r.form_poly);
    Vec df(f), d2f(f);
    for (int j = 0; j < n; ++j) {
      df[static_cast<std::size_t>(j)] *= j;
      d2f[static_cast<std::size_t>(j)] *= j * j;
    }
    const Vec a = mul(e2, df), b = mul(de2, f);
    for (int j = 0; j < n; ++j) {
      const Rational res = d2f[static_cast<std::size_t>(j)] - Rational(w, 6) * a[static_cast<std::size_t>(j)] +
                           Rational(w * (w - 1), 12) * b[static_cast<std::size_t>(j)];
      expect(res == 0, "ODE of f_{1," + std::to_string(w) + "} at q^" + std::to_string(j));
    }
  }
  return "k <= 12 at precision 40; w in {0, 6, ..., 72}";
}

std::string contiguity() {
  const int n = 60;
  const auto path = qmx::g_series_by_contiguity(20, n);
  for (int i = 0; i <= 20; ++i) {
    const Vec c = g_brute(i, n);
    const USeries& g = path[static_cast<std::size_t>(i)];
    expect(g.valuation() == i || c[0] == 0, "valuation of g_" + std::to_string(i));
    for (int j = 0; j < n; ++j) {
      expect(g.coeff(i + 2 * j) == c[static_cast<std::size_t>(j)], "contiguity g_" + std::to_string(i) + " at q^" + std::to_string(j));
    }
    expect(g == qmx::g_series(i, n), "two paths differ at g_" + std::to_string(i));
  }
  const std::vector<Rational> ks = {frac(1, 2), frac(3, 7), frac(5, 3), frac(11, 4), frac(-1, 3)};
  for (const auto& k : ks) {
    const auto rep = qmx::eigen_check(k, 20);
    expect(rep.normalized == k + 1, "eigenvalue at k = " + qmx::to_string(k));
    expect(rep.raw == 12 * (k + 1), "raw ratio at k = " + qmx::to_string(k));
  }
  return "g_0..g_20 agree at precision 60; eigenvalue k + 1 at 5 samples";
}

std::string lax() {
  const std::vector<Rational> ks = {frac(1, 2), frac(3, 7), frac(5, 3), frac(11, 4), frac(-1, 3)};
  const auto r1 = qmx::lax_check_1(ks, 30, 20, 11);
  expect(r1.holds, "identity 1: " + r1.counterexample);
  expect(r1.trials == 20 && r1.k_samples == 5, "identity 1 sample counts");
  const auto r2 = qmx::lax_check_2(ks, 30, 20, 12);
  expect(r2.holds, "identity 2: " + r2.counterexample);
  expect(r2.holds_mu_one == true, "identity 2 with mu = 1");
  const auto r3 = qmx::lax_check_2(ks, 30, 20, 13, [](const Rational& k) -> Rational { return 3 * qmx::mu(k) - frac(2, 5); });
  expect(r3.holds, "identity 2 with a perturbed mu");
  std::string note = "20 trials x 5 k x precision 30; mu-independent";
  if (r2.literal_sign_holds == false) note += "; right side of identity 2 enters with reversed sign";
  return note;
}

std::string denominators() {
  const int n = 60;
  for (int k = 1; k <= 20; ++k) {
    const USeries f = qmx::f_1_6k(k, n);
    // q^k prod (1 - q^m)^(12k) sum c_j q^j
    const auto eta = oracle::eta_power_product(n, 12 * k);
    Vec e(eta.begin(), eta.end());
    const Vec c = g_brute(k, n);
    const Vec prod = mul(e, c);
    for (int j = 0; j < n; ++j) {
      const Rational expected = j >= k ? prod[static_cast<std::size_t>(j - k)] : Rational(0);
      expect(f.q_coeff(j) == expected, "f_{1," + std::to_string(6 * k) + "} at q^" + std::to_string(j));
      expect(primes_below(expected.get_den(), 6 * k), "denominator prime >= " + std::to_string(6 * k));
    }
  }
  for (int i = 0; i <= 20; ++i) {
    for (const auto& c : g_brute(i, n)) expect(c >= 0, "negative coefficient in g_" + std::to_string(i));
  }
  return "k <= 20 at precision 60";
}

std::string leech() {
  const int n = 401;
  const auto tau = oracle::delta_product(n);
  std::vector<mpz_class> shells(static_cast<std::size_t>(n));
  shells[0] = 1;
  for (int a = 1; a < n; ++a) {
    const Rational t = frac(65520, 691) * Rational(oracle::sigma_brute(11, a) - tau[static_cast<std::size_t>(a)]);
    expect(t.get_den() == 1 && t >= 0, "theta coefficient at q^" + std::to_string(a));
    shells[static_cast<std::size_t>(a)] = t.get_num();
  }
  expect(shells[1] == 0 && shells[2] == 196560, "first shells");
  const USeries theta = qmx::theta_leech(n);
  const USeries f = qmx::f_1_14(n);
  for (int a = 0; a < n; ++a) {
    expect(theta.q_coeff(a) == Rational(shells[static_cast<std::size_t>(a)]), "library theta at q^" + std::to_string(a));
    const mpz_class weighted = a * shells[static_cast<std::size_t>(a)];
    expect(mpz_divisible_ui_p(weighted.get_mpz_t(), 393120) != 0, "393120 does not divide a|L_a| at a = " + std::to_string(a));
    expect(f.q_coeff(a) == Rational(weighted / 393120), "f_{1,14} at q^" + std::to_string(a));
  }
  expect(f.q_valuation() == 2, "nu(f_{1,14})");
  const auto ext = qmx::numax_and_form(1, 14);
  expect(ext.nu == 2 && qmx::agree_below(f, ext.expansion, ext.expansion.prec()), "solver's f_{1,14}");
  const auto rep = qmx::divisibility_scan(400);
  expect(rep.divisibility_ok && rep.f114_integral && rep.f114_nonnegative, "divisibility_scan report");
  return "a <= 400; f_{1,14} integral, non-negative, nu = 2";
}

std::string diagonal_bases() {
  int cells = 0;
  for (int l = 0; l <= 4; ++l) {
    for (int w = 2 * l; w <= 60; w += 2) {
      const int delta = oracle::monomials_brute(l, w);
      if (delta == 0) continue;
      ++cells;
      const auto basis = qmx::diagonal_basis(l, w);
      expect(static_cast<int>(basis.size()) == delta, "size " + cell(l, w));
      BruteExpander ex(delta);
      for (int i = 0; i < delta; ++i) {
        const Vec g = ex.expand(basis[static_cast<std::size_t>(i)]);
        for (int j = 0; j < delta; ++j) expect(g[static_cast<std::size_t>(j)] == (i == j ? 1 : 0), "entry " + cell(l, w));
      }
    }
  }
  return std::to_string(cells) + " cells with l <= 4, w <= 60";
}

std::string scans() {
  const int prec = 60;
  const auto rows = qmx::scan_integrality(6, 60, prec, 0);
  std::size_t i = 0;
  for (int l = 0; l <= 6; ++l) {
    for (int w = 2 * l; w <= 60; w += 2, ++i) {
      expect(i < rows.size() && rows[i].l == l && rows[i].w == w, "row order at " + cell(l, w));
      const auto& r = rows[i];
      if (r.skipped) continue;
      expect(r.nu >= r.delta - 1, "nu < delta - 1 at " + cell(l, w));
      expect(r.integral == !r.max_denominator_prime.has_value(), "integral flag at " + cell(l, w));
      expect(r.note.find("observed") != std::string::npos, "row not labeled as observed at " + cell(l, w));
    }
  }
  expect(i == rows.size(), "row count");

  const auto c1 = qmx::conjecture1_scan(4, 60, prec, 0);
  expect(c1.violations.empty(), "violation reported: " + (c1.violations.empty() ? "" : c1.violations.front()));
  int checked = 0;
  for (const auto& r : c1.rows) {
    if (r.skipped) continue;
    ++checked;
    const Vec f = BruteExpander(prec).expand(qmx::numax_and_form(r.l, r.w).form_poly);
    for (std::size_t n = 0; n < f.size(); ++n) {
      expect(primes_below(f[n].get_den(), r.w), "denominator at " + cell(r.l, r.w));
      if (!(r.l == 1 && r.w == 2) && static_cast<int>(n) >= r.nu) expect(f[n] > 0, "positivity at " + cell(r.l, r.w));
    }
  }
  return std::to_string(rows.size()) + " rows; " + std::to_string(checked) +
         " cells with l <= 4 show no violation (observed to precision 60)";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<std::string()>>> criteria = {
      {"Eisenstein expansions", eisenstein_sanity},
      {"kappa sequence", kappa_sequence},
      {"extremal vanishing orders", vanishing_orders},
      {"Wronskians", wronskians},
      {"ODEs", odes},
      {"contiguity and eigenvalue", contiguity},
      {"Lax identities", lax},
      {"denominators of f_{1,6k}", denominators},
      {"Leech theta series", leech},
      {"diagonal bases", diagonal_bases},
      {"integrality scans", scans},
  };
  int failed = 0, id = 0;
  for (const auto& [name, run] : criteria) {
    ++id;
    const auto start = std::chrono::steady_clock::now();
    std::string status = "PASS", detail;
    try {
      detail = run();
    } catch (const Failure& f) {
      status = "FAIL";
      detail = f.what;
    } catch (const std::exception& e) {
      status = "FAIL";
      detail = std::string("exception: ") + e.what();
    }
    if (status == "FAIL") ++failed;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %2d  %-28s %7.2fs  %s\n", status.c_str(), id, name.c_str(), secs, detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", id - failed, id);
  return failed == 0 ? 0 : 1;
}
