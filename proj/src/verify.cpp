#include "qmx/verify.hpp"

#include <chrono>
#include <functional>
#include <istream>
#include <random>
#include <sstream>

#include "qmx/depth1.hpp"
#include "qmx/dims.hpp"
#include "qmx/extremal.hpp"
#include "qmx/leech.hpp"
#include "qmx/parallel.hpp"
#include "qmx/wronskian.hpp"

namespace qmx {

namespace {

unsigned thread_count(unsigned requested) { return requested == 0 ? default_threads() : requested; }

ScanRow scan_cell(int l, int w, int prec) {
  ScanRow row;
  row.l = l;
  row.w = w;
  row.delta = dim_qm(l, w);
  row.prec_used = prec;
  if (w - 2 * l == 2) {
    row.skipped = true;
    row.note = "w - 2l = 2: no form of depth exactly l";
    return row;
  }
  if (row.delta == 0) {
    row.skipped = true;
    row.note = "empty space";
    return row;
  }
  const auto ext = numax_and_form(l, w);
  row.nu = ext.nu;
  if (prec <= ext.nu + 1) {
    throw PrecisionError("increase precision: " + std::to_string(prec) + " coefficients do not reach past the leading term of f_{" +
                         std::to_string(l) + "," + std::to_string(w) + "} (nu = " + std::to_string(ext.nu) + ")");
  }
  const USeries f = expand(ext.form_poly, prec);
  const auto primes = denominator_primes(f);
  row.integral = primes.empty();
  if (!primes.empty()) row.max_denominator_prime = primes.back();
  row.positive = true;
  for (int n = ext.nu; n < prec; ++n) {
    if (f.q_coeff(n) <= 0) {
      row.positive = false;
      break;
    }
  }
  row.note = "observed to precision " + std::to_string(prec);
  return row;
}

struct Cell {
  int l;
  int w;
};

std::vector<Cell> grid(int l_min, int l_max, int w_max) {
  std::vector<Cell> cells;
  for (int l = l_min; l <= l_max; ++l) {
    for (int w = 2 * l; w <= w_max; w += 2) cells.push_back({l, w});
  }
  return cells;
}

std::vector<ScanRow> scan_cells(const std::vector<Cell>& cells, int prec, unsigned threads) {
  return parallel_map<ScanRow>(cells.size(), thread_count(threads),
                               [&](std::size_t i) { return scan_cell(cells[i].l, cells[i].w, prec); });
}

// Failure of a single check, carrying its message up to the check runner.
struct CheckFailure {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw CheckFailure{what};
}

std::string cell_name(int l, int w) { return "(l=" + std::to_string(l) + ", w=" + std::to_string(w) + ")"; }

std::string check_eisenstein(const Profile& p) {
  const int n_max = p.eisenstein_n;
  const struct {
    Eisenstein which;
    int power;
    long scale;
    const char* name;
  } series[] = {{Eisenstein::E2, 1, -24, "E2"}, {Eisenstein::E4, 3, 240, "E4"}, {Eisenstein::E6, 5, -504, "E6"}};
  for (const auto& s : series) {
    const USeries e = eisenstein(s.which, n_max + 1);
    require(e.q_coeff(0) == 1, std::string(s.name) + " constant term");
    for (int n = 1; n <= n_max; ++n) {
      Integer divisor_sum = 0;
      for (int d = 1; d <= n; ++d) {
        if (n % d == 0) {
          Integer t;
          mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(s.power));
          divisor_sum += t;
        }
      }
      require(e.q_coeff(n) == Rational(s.scale * divisor_sum), std::string(s.name) + " at q^" + std::to_string(n));
    }
  }
  return "E2, E4, E6 exact for n <= " + std::to_string(n_max);
}

std::string check_kappa(const Profile& p) {
  static const int expected[] = {0, 0, 0, 0, 0, 1, 1, 2, 3, 4, 5, 7, 8, 10, 12, 14, 16, 19};
  for (int l = 0; l < 18; ++l) {
    require(kappa_stable(l) == expected[l], "kappa_" + std::to_string(l) + " = " + std::to_string(kappa_stable(l)));
  }
  for (int l = 0; l <= 4; ++l) {
    for (int w = 0; w <= p.kappa_w_max; w += 2) require(kappa(l, w) == 0, "kappa " + cell_name(l, w) + " != 0");
  }
  return "kappa_0..17 match; kappa_l(w) = 0 for l <= 4, w <= " + std::to_string(p.kappa_w_max);
}

std::string check_extremal(const Profile& p) {
  std::vector<Cell> cells;
  for (int l = 0; l <= 8; ++l) {
    const int w_max = l <= 4 ? p.extremal_w_max : p.extremal_bound_w_max;
    for (int w = 2 * l; w <= w_max; w += 2) {
      if (valid_cell(l, w) && dim_qm(l, w) >= 1) cells.push_back({l, w});
    }
  }
  const auto results = parallel_map<ExtremalResult>(cells.size(), thread_count(p.threads), [&](std::size_t i) {
    return numax_and_form(cells[i].l, cells[i].w);
  });
  int with_slack = 0;
  for (const auto& r : results) {
    const int low = r.delta - 1;
    if (r.l <= 4) {
      require(r.nu == low, "nu " + cell_name(r.l, r.w) + " = " + std::to_string(r.nu) + ", delta - 1 = " +
                               std::to_string(low));
    } else {
      require(low <= r.nu && r.nu <= low + r.kappa, "nu " + cell_name(r.l, r.w) + " outside the bounds");
      if (r.nu > low) ++with_slack;
    }
  }
  return std::to_string(results.size()) + " cells; " + std::to_string(with_slack) + " cells with l > 4 exceed delta - 1";
}

QMPoly random_form(std::mt19937_64& rng, int l, int w, int start) {
  const auto basis = diagonal_basis(l, w);
  std::uniform_int_distribution<long> num(-9, 9), den(1, 5);
  QMPoly f;
  for (std::size_t i = static_cast<std::size_t>(start); i < basis.size(); ++i) {
    f = f + frac(num(rng), den(rng)) * basis[i];
  }
  if (f.is_zero()) f = basis.back();
  return f;
}

std::string check_wronskian(const Profile& p) {
  const ZQMPoly anchor = wronskian(QMPoly::E2(), 1);
  require(anchor == ZQMPoly(-QMPoly::E4(), -1), "W(E2) != -E4 / (2 pi i)");
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> pick_l(0, 3);
  for (int trial = 0; trial < p.wronskian_trials; ++trial) {
    const int l = pick_l(rng);
    std::uniform_int_distribution<int> pick_w(l + 1, l + 6);
    const int w = 2 * pick_w(rng);
    if (dim_qm(l, w) == 0) continue;
    std::uniform_int_distribution<int> pick_s(0, dim_qm(l, w) - 1);
    const QMPoly f = random_form(rng, l, w, pick_s(rng));
    const auto nu_f = expand(f, dim_qm(l, w) + 1).q_valuation();
    const ZQMPoly W = wronskian(f, l);
    const std::string at = "random trial " + std::to_string(trial) + " " + cell_name(l, w);
    require(W.is_Z_free() && W.is_E2_free(), at + ": W not Z-free and E2-free");
    require(W.weight() == (l + 1) * w, at + ": weight");
    const int nu_W = modular_valuation(W.coeff(0));
    require(!nu_f || nu_W >= *nu_f, at + ": nu(W) < nu(f)");
  }
  return "anchor exact; " + std::to_string(p.wronskian_trials) + " random Wronskians";
}

std::string check_ode(const Profile& p) {
  for (int k = 0; k <= p.ode_k_max; ++k) {
    const USeries r = ode_residual(k, p.ode_prec);
    require(r.is_zero(), "ode residual at k = " + std::to_string(k) + " starts at u^" + std::to_string(*r.valuation()));
  }
  for (int w = 0; w <= p.kk_w_max; w += 6) {
    require(kk_ode_residual(w, p.ode_prec).is_zero(), "second-order ODE residual of f_{1,w} at w = " + std::to_string(w));
  }
  return "k <= " + std::to_string(p.ode_k_max) + ", w <= " + std::to_string(p.kk_w_max) + " at precision " +
         std::to_string(p.ode_prec);
}

MuFunction effective_mu(const Profile& p) {
  if (!p.mu_tamper) return mu;
  const Rational shift = *p.mu_tamper;
  return [shift](const Rational& k) -> Rational { return mu(k) + shift; };
}

std::vector<Rational> samples(const Profile& p) { return p.k_samples.empty() ? default_k_samples() : p.k_samples; }

std::string check_contiguity(const Profile& p) {
  const MuFunction m = effective_mu(p);
  const auto path = g_series_by_contiguity(p.contiguity_i_max, p.contiguity_prec, m);
  for (int i = 0; i <= p.contiguity_i_max; ++i) {
    require(path[static_cast<std::size_t>(i)] == g_series(i, p.contiguity_prec),
            "contiguity path differs from the direct g_" + std::to_string(i));
  }
  for (const auto& k : samples(p)) {
    const auto rep = eigen_check(k, p.contiguity_prec / 2);
    require(rep.normalized == k + 1, "eigenvalue at k = " + to_string(k) + " is " + to_string(rep.normalized));
    require(g_mu_phi2(k, m(k), p.contiguity_prec / 2).is_zero(), "G_mu(phi_2) != 0 at k = " + to_string(k));
  }
  return "g_0..g_" + std::to_string(p.contiguity_i_max) + " agree at precision " + std::to_string(p.contiguity_prec) +
         "; eigenvalue k + 1 at " + std::to_string(samples(p).size()) + " samples";
}

std::string check_lax(const Profile& p) {
  const auto ks = samples(p);
  const auto r1 = lax_check_1(ks, p.lax_prec, p.lax_trials);
  require(r1.holds, "Lax identity 1: " + r1.counterexample);
  const auto r2 = lax_check_2(ks, p.lax_prec, p.lax_trials, 2, effective_mu(p));
  require(r2.holds, "Lax identity 2: " + r2.counterexample);
  require(r2.holds_mu_one.value_or(false), "Lax identity 2 fails for mu = 1");
  std::string detail = std::to_string(p.lax_trials) + " trials x " + std::to_string(ks.size()) + " k values";
  if (r2.literal_sign_holds == false) detail += "; identity 2 holds with the sign of its right side reversed";
  return detail;
}

std::string check_denominators(const Profile& p) {
  for (int k = 1; k <= p.denominators_k_max; ++k) {
    for (const auto& prime : denominator_primes(f_1_6k(k, p.denominators_prec))) {
      require(prime < 6 * k, "f_{1," + std::to_string(6 * k) + "} has denominator prime " + to_string(prime));
    }
  }
  for (int i = 0; i <= p.denominators_k_max; ++i) {
    const USeries g = g_series(i, p.denominators_prec);
    for (const auto& [e, c] : g.terms()) require(c >= 0, "g_" + std::to_string(i) + " has a negative coefficient");
  }
  return "k <= " + std::to_string(p.denominators_k_max) + " at precision " + std::to_string(p.denominators_prec);
}

std::string check_leech(const Profile& p) {
  const auto rep = divisibility_scan(p.leech_a_max);
  require(rep.shells.size() > 2 && rep.shells[2].second == 196560, "|L_2| != 196560");
  require(rep.shells.size() > 1 && rep.shells[1].second == 0, "|L_1| != 0");
  require(rep.divisibility_ok, "393120 does not divide a|L_a|");
  require(rep.f114_integral && rep.f114_nonnegative, "f_{1,14} not a non-negative integral series");
  const USeries f = f_1_14(p.leech_a_max + 1);
  require(f.q_valuation() == 2, "nu(f_{1,14}) != 2");
  return "a <= " + std::to_string(p.leech_a_max) + "; f_{1,14} matches the solver";
}

std::string check_diagonal(const Profile& p) {
  std::vector<Cell> cells;
  for (int l = 0; l <= 4; ++l) {
    for (int w = 2 * l; w <= p.diagonal_w_max; w += 2) {
      if (dim_qm(l, w) >= 1) cells.push_back({l, w});
    }
  }
  parallel_map<int>(cells.size(), thread_count(p.threads), [&](std::size_t i) {
    const int l = cells[i].l, w = cells[i].w;
    const auto basis = diagonal_basis(l, w);
    const int n = dim_qm(l, w);
    require(static_cast<int>(basis.size()) == n, "diagonal basis size " + cell_name(l, w));
    for (int j = 0; j < n; ++j) {
      const USeries g = expand(basis[static_cast<std::size_t>(j)], n);
      for (int m = 0; m < n; ++m) {
        require(g.q_coeff(m) == (m == j ? 1 : 0), "diagonal basis " + cell_name(l, w) + " element " + std::to_string(j));
      }
    }
    return 0;
  });
  return std::to_string(cells.size()) + " cells with l <= 4, w <= " + std::to_string(p.diagonal_w_max);
}

std::string check_scans(const Profile& p) {
  const auto rows = scan_integrality(p.scan_l_max, p.scan_w_max, p.scan_prec, p.threads);
  const auto c1 = conjecture1_scan(std::min(4, p.scan_l_max), p.scan_w_max, p.scan_prec, p.threads);
  require(c1.violations.empty(), "integrality conjecture violation: " + (c1.violations.empty() ? "" : c1.violations.front()));
  int integral = 0;
  for (const auto& r : rows) integral += (!r.skipped && r.integral) ? 1 : 0;
  return std::to_string(rows.size()) + " scan rows (" + std::to_string(integral) +
         " integral); no integrality conjecture violation observed to precision " + std::to_string(p.scan_prec);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw DomainError("config: " + key + " expects an integer, got '" + value + "'");
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<ScanRow> scan_integrality(int l_max, int w_max, int prec, unsigned threads) {
  if (l_max < 0 || w_max < 0 || prec < 1) throw DomainError("scan_integrality needs l_max, w_max >= 0 and prec >= 1");
  return scan_cells(grid(0, l_max, w_max), prec, threads);
}

Conjecture1Report conjecture1_scan(int l_max, int w_max, int prec, unsigned threads) {
  if (l_max > 4) throw DomainError("the integrality conjecture concerns l <= 4");
  if (l_max < 1 || w_max < 0 || prec < 1) throw DomainError("conjecture1_scan needs l_max >= 1, w_max >= 0, prec >= 1");
  Conjecture1Report rep;
  rep.l_max = l_max;
  rep.w_max = w_max;
  rep.prec = prec;
  rep.rows = scan_cells(grid(1, l_max, w_max), prec, threads);
  for (const auto& r : rep.rows) {
    if (r.skipped) continue;
    if (r.max_denominator_prime && *r.max_denominator_prime >= r.w) {
      rep.violations.push_back(cell_name(r.l, r.w) + ": denominator prime " + to_string(*r.max_denominator_prime));
    }
    if (!r.positive && !(r.l == 1 && r.w == 2)) {
      rep.violations.push_back(cell_name(r.l, r.w) + ": non-positive coefficient");
    }
  }
  return rep;
}

Profile profile_by_name(const std::string& name) {
  Profile p;
  p.name = name;
  if (name == "full") return p;
  if (name == "quick") {
    p.eisenstein_n = 60;
    p.kappa_w_max = 60;
    p.extremal_w_max = 48;
    p.extremal_bound_w_max = 30;
    p.wronskian_trials = 6;
    p.ode_prec = 20;
    p.ode_k_max = 6;
    p.kk_w_max = 24;
    p.contiguity_i_max = 8;
    p.contiguity_prec = 24;
    p.lax_trials = 3;
    p.lax_prec = 12;
    p.denominators_k_max = 6;
    p.denominators_prec = 24;
    p.leech_a_max = 40;
    p.diagonal_w_max = 24;
    p.scan_l_max = 4;
    p.scan_w_max = 24;
    p.scan_prec = 24;
    return p;
  }
  throw DomainError("unknown profile '" + name + "' (expected full or quick)");
}

void apply_config_value(Profile& p, const std::string& key, const std::string& value) {
  const std::map<std::string, int Profile::*> ints = {
      {"eisenstein_n", &Profile::eisenstein_n},
      {"kappa_w_max", &Profile::kappa_w_max},
      {"extremal_w_max", &Profile::extremal_w_max},
      {"extremal_bound_w_max", &Profile::extremal_bound_w_max},
      {"wronskian_trials", &Profile::wronskian_trials},
      {"ode_prec", &Profile::ode_prec},
      {"ode_k_max", &Profile::ode_k_max},
      {"kk_w_max", &Profile::kk_w_max},
      {"contiguity_i_max", &Profile::contiguity_i_max},
      {"contiguity_prec", &Profile::contiguity_prec},
      {"lax_trials", &Profile::lax_trials},
      {"lax_prec", &Profile::lax_prec},
      {"denominators_k_max", &Profile::denominators_k_max},
      {"denominators_prec", &Profile::denominators_prec},
      {"leech_a_max", &Profile::leech_a_max},
      {"diagonal_w_max", &Profile::diagonal_w_max},
      {"scan_l_max", &Profile::scan_l_max},
      {"scan_w_max", &Profile::scan_w_max},
      {"scan_prec", &Profile::scan_prec},
  };
  if (auto it = ints.find(key); it != ints.end()) {
    const int v = parse_int(key, value);
    if (v < 0) throw DomainError("config: " + key + " must be non-negative");
    p.*(it->second) = v;
  } else if (key == "profile") {
    const auto threads = p.threads;
    const auto tamper = p.mu_tamper;
    const auto ks = p.k_samples;
    p = profile_by_name(value);
    p.threads = threads;
    p.mu_tamper = tamper;
    p.k_samples = ks;
  } else if (key == "threads") {
    p.threads = static_cast<unsigned>(std::max(0, parse_int(key, value)));
  } else if (key == "k_samples") {
    p.k_samples.clear();
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (!trim(item).empty()) p.k_samples.push_back(parse_rational(trim(item)));
    }
  } else if (key == "mu_tamper") {
    p.mu_tamper = parse_rational(value);
  } else {
    throw DomainError("config: unknown key '" + key + "'");
  }
}

void apply_config(Profile& p, std::istream& in) {
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError("config line " + std::to_string(number) + ": expected key = value");
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    apply_config_value(p, trim(line.substr(0, eq)), value);
  }
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Precision:
      return "precision";
  }
  return "fail";
}

int VerifyReport::exit_code() const {
  bool precision = false;
  for (const auto& c : checks) {
    if (c.status == CheckStatus::Fail) return 1;
    if (c.status == CheckStatus::Precision) precision = true;
  }
  return precision ? 2 : 0;
}

VerifyReport verify_all(const Profile& p) {
  const std::vector<std::pair<std::string, std::function<std::string(const Profile&)>>> suite = {
      {"Eisenstein expansions", check_eisenstein},
      {"kappa sequence", check_kappa},
      {"extremal vanishing orders and bounds", check_extremal},
      {"Wronskian anchor and random Wronskians", check_wronskian},
      {"hypergeometric ODEs", check_ode},
      {"contiguity and eigenvalue", check_contiguity},
      {"Lax identities", check_lax},
      {"denominators of f_{1,6k}", check_denominators},
      {"Leech theta series", check_leech},
      {"diagonal bases", check_diagonal},
      {"integrality scans", check_scans},
  };
  VerifyReport report;
  report.profile = p.name;
  int id = 0;
  for (const auto& [name, run] : suite) {
    CheckResult c;
    c.id = ++id;
    c.name = name;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.detail = run(p);
      c.status = CheckStatus::Pass;
    } catch (const CheckFailure& f) {
      c.status = CheckStatus::Fail;
      c.detail = f.what;
    } catch (const PrecisionError& e) {
      c.status = CheckStatus::Precision;
      c.detail = e.what();
      if (c.detail.rfind("increase precision", 0) != 0) c.detail = "increase precision: " + c.detail;
    } catch (const Error& e) {
      c.status = CheckStatus::Fail;
      c.detail = e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(c));
  }
  return report;
}

}  // namespace qmx
