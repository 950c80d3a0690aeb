#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qmx/depth1.hpp"
#include "qmx/dims.hpp"
#include "qmx/extremal.hpp"
#include "qmx/leech.hpp"
#include "qmx/parallel.hpp"
#include "qmx/verify.hpp"
#include "qmx/wronskian.hpp"

using json = nlohmann::ordered_json;
using namespace qmx;

namespace {

constexpr int kDefaultPrec = 20;

enum class Format { Text, Json, Csv };

// A rendered result: the JSON document, plus a table and summary lines for
// text and CSV output.
struct Output {
  json doc = json::object();
  std::vector<std::pair<std::string, std::string>> summary;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int exit_code = 0;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\r\n";
}

void print(const Output& out, Format fmt) {
  if (fmt == Format::Json) {
    std::cout << out.doc.dump(2) << "\n";
    return;
  }
  if (fmt == Format::Csv) {
    if (out.header.empty()) {
      write_csv_row(std::cout, {"key", "value"});
      for (const auto& [k, v] : out.summary) write_csv_row(std::cout, {k, v});
    } else {
      write_csv_row(std::cout, out.header);
      for (const auto& r : out.rows) write_csv_row(std::cout, r);
    }
    return;
  }
  for (const auto& [k, v] : out.summary) std::cout << k << ": " << v << "\n";
  if (out.header.empty()) return;
  std::vector<std::size_t> width(out.header.size());
  for (std::size_t i = 0; i < width.size(); ++i) width[i] = out.header[i].size();
  for (const auto& r : out.rows) {
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::cout << r[i];
      if (i + 1 < r.size()) std::cout << std::string(width[i] - r[i].size() + 2, ' ');
    }
    std::cout << "\n";
  };
  if (!out.summary.empty()) std::cout << "\n";
  line(out.header);
  for (const auto& r : out.rows) line(r);
}

std::string yes_no(bool b) { return b ? "true" : "false"; }

json series_json(const USeries& s) {
  bool even = true;
  for (const auto& [e, c] : s.terms()) even = even && e % 2 == 0;
  if (!s.exact() && s.prec() % 2 != 0) even = false;
  json coeffs = json::array();
  for (const auto& [e, c] : s.terms()) coeffs.push_back(json::array({even ? e / 2 : e, to_string(c)}));
  json j;
  j["unit"] = even ? "q" : "u";
  if (s.exact()) {
    j["prec"] = nullptr;
  } else {
    j["prec"] = even ? s.prec() / 2 : s.prec();
  }
  j["coeffs"] = coeffs;
  return j;
}

json poly_json(const QMPoly& f) {
  json a = json::array();
  for (const auto& [e, c] : f.terms()) a.push_back(json::array({e.e2, e.e4, e.e6, to_string(c)}));
  return a;
}

std::string poly_text(const QMPoly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (const auto& [e, c] : f.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    if (e.e2) s += "*E2^" + std::to_string(e.e2);
    if (e.e4) s += "*E4^" + std::to_string(e.e4);
    if (e.e6) s += "*E6^" + std::to_string(e.e6);
  }
  return s;
}

QMPoly parse_poly(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DomainError(std::string("--form is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw DomainError("--form must be an array of [i, j, k, \"coefficient\"]");
  QMPoly f;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 4 || !t[0].is_number_integer() || !t[1].is_number_integer() ||
        !t[2].is_number_integer()) {
      throw DomainError("--form entries must be [i, j, k, \"coefficient\"]");
    }
    const int i = t[0].get<int>(), a = t[1].get<int>(), b = t[2].get<int>();
    if (i < 0 || a < 0 || b < 0) throw DomainError("--form exponents must be non-negative");
    const Rational c = t[3].is_string() ? parse_rational(t[3].get<std::string>())
                                        : parse_rational(std::to_string(t[3].get<long>()));
    f = f + QMPoly::monomial({i, a, b}, c);
  }
  return f;
}

QMPoly named_form(const std::string& name) {
  if (name == "E2") return QMPoly::E2();
  if (name == "E4") return QMPoly::E4();
  if (name == "E6") return QMPoly::E6();
  if (name == "Delta") return delta_form();
  throw DomainError("unknown form name '" + name + "' (E2, E4, E6, Delta)");
}

struct Settings {
  Format format = Format::Text;
  int prec = kDefaultPrec;
  unsigned threads = 0;
  std::map<std::string, std::string> config;  // remaining config keys, for verify
};

// Precision default: QMX_PREC, then the config file; flags override both.
void load_config(Settings& s, const std::string& path) {
  if (const char* env = std::getenv("QMX_PREC")) {
    try {
      s.prec = std::stoi(env);
    } catch (const std::exception&) {
      throw DomainError(std::string("QMX_PREC is not an integer: ") + env);
    }
  }
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  Profile probe;
  std::string line;
  std::istringstream lines(buffer.str());
  while (std::getline(lines, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) throw DomainError("config: expected key = value in '" + line + "'");
    auto strip = [](std::string t) {
      const auto b = t.find_first_not_of(" \t\r\"");
      const auto e = t.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq)), value = strip(line.substr(eq + 1));
    if (key == "prec") {
      try {
        s.prec = std::stoi(value);
      } catch (const std::exception&) {
        throw DomainError("config: prec expects an integer");
      }
    } else {
      apply_config_value(probe, key, value);  // validates the key
      s.config[key] = value;
    }
  }
}

Output cmd_expand(const Settings& s, const std::string& form, const std::string& name) {
  if (form.empty() == name.empty()) throw DomainError("expand needs exactly one of --form and --name");
  const QMPoly f = form.empty() ? named_form(name) : parse_poly(form);
  const USeries e = expand(f, s.prec);
  Output out;
  out.doc["form"] = poly_json(f);
  out.doc["weight"] = f.weight() ? json(*f.weight()) : json(nullptr);
  out.doc["series"] = series_json(e);
  out.summary = {{"form", poly_text(f)}, {"prec", std::to_string(s.prec)}};
  out.header = {"n", "coefficient"};
  for (int n = 0; n < s.prec; ++n) out.rows.push_back({std::to_string(n), to_string(e.q_coeff(n))});
  return out;
}

Output cmd_dims(int l, int w_single, int w_max, bool conjecture) {
  if (l < 0) throw DomainError("--l must be non-negative");
  int lo = 0, hi = w_max;
  if (w_single >= 0) lo = hi = w_single;
  if (hi < 0) throw DomainError("dims needs --w or --w-max");
  Output out;
  out.header = {"l", "w", "d", "delta", "kappa_w", "kappa_stable"};
  if (conjecture) {
    out.header.insert(out.header.end(), {"literal_identity", "shifted_identity"});
    out.summary = {{"a(0)", "1 (empty triple); a(n) = 0 for n < 0"},
                   {"literal_identity", "kappa_l(w) = a(l) - a(l - w/2)"},
                   {"shifted_identity", "kappa_l(w) = a(l - 5) - a(l - 5 - w/2)"}};
    out.doc["a_convention"] = "a(0) = 1, a(n) = 0 for n < 0";
  }
  json rows = json::array();
  int literal_fail = 0, shifted_fail = 0;
  for (int w = lo + (lo % 2 != 0 ? 1 : 0); w <= hi; w += 2) {
    const auto r = dim_report(l, w);
    json j = {{"l", r.l}, {"w", r.w}, {"d", r.d}, {"delta", r.delta}, {"kappa_w", r.kappa_w},
              {"kappa_stable", r.kappa_stable}};
    std::vector<std::string> row = {std::to_string(r.l),     std::to_string(r.w),       std::to_string(r.d),
                                    std::to_string(r.delta), std::to_string(r.kappa_w), std::to_string(r.kappa_stable)};
    if (conjecture) {
      const bool lit = r.kappa_w == a_count(l) - a_count(l - w / 2);
      const bool sh = r.kappa_w == a_count(l - 5) - a_count(l - 5 - w / 2);
      literal_fail += lit ? 0 : 1;
      shifted_fail += sh ? 0 : 1;
      j["literal_identity"] = lit;
      j["shifted_identity"] = sh;
      row.insert(row.end(), {yes_no(lit), yes_no(sh)});
    }
    rows.push_back(j);
    out.rows.push_back(row);
  }
  out.doc["rows"] = rows;
  if (conjecture) {
    out.doc["literal_identity_failures"] = literal_fail;
    out.doc["shifted_identity_failures"] = shifted_fail;
    out.summary.push_back({"literal_identity_failures", std::to_string(literal_fail)});
    out.summary.push_back({"shifted_identity_failures", std::to_string(shifted_fail)});
  }
  return out;
}

ExtremalOptions extremal_options(std::optional<int> prec) {
  ExtremalOptions o;
  if (prec) o.q_prec = *prec;
  return o;
}

Output cmd_extremal(int l, int w, std::optional<int> prec) {
  const auto r = numax_and_form(l, w, extremal_options(prec));
  Output out;
  json pivots = r.pivot_columns;
  out.doc = {{"l", r.l},
             {"w", r.w},
             {"nu", r.nu},
             {"delta", r.delta},
             {"kappa", r.kappa},
             {"depth", r.depth_actual},
             {"algebraically_extremal", r.algebraically_extremal},
             {"depth_l_impossible", r.depth_l_impossible},
             {"q_prec", r.q_prec},
             {"pivot_columns", pivots},
             {"form", poly_json(r.form_poly)},
             {"expansion", series_json(r.expansion)}};
  out.summary = {{"l", std::to_string(r.l)},
                 {"w", std::to_string(r.w)},
                 {"nu", std::to_string(r.nu)},
                 {"delta", std::to_string(r.delta)},
                 {"kappa", std::to_string(r.kappa)},
                 {"depth", std::to_string(r.depth_actual)},
                 {"algebraically_extremal", yes_no(r.algebraically_extremal)},
                 {"form", poly_text(r.form_poly)}};
  if (r.depth_l_impossible) out.summary.push_back({"note", "w - 2l = 2: no quasi-modular form has depth exactly l"});
  out.header = {"n", "coefficient"};
  for (int n = 0; n < r.expansion.q_prec(); ++n) out.rows.push_back({std::to_string(n), to_string(r.expansion.q_coeff(n))});
  return out;
}

Output cmd_scan_extremal(int l, int w_max, unsigned threads) {
  if (l < 0) throw DomainError("--l must be non-negative");
  std::vector<int> ws;
  for (int w = 2 * l; w <= w_max; w += 2) ws.push_back(w);
  struct Row {
    int w = 0;
    std::optional<ExtremalResult> r;
  };
  const auto results = parallel_map<Row>(ws.size(), threads == 0 ? default_threads() : threads, [&](std::size_t i) {
    Row row{ws[i], std::nullopt};
    if (dim_qm(l, ws[i]) > 0) row.r = numax_and_form(l, ws[i]);
    return row;
  });
  Output out;
  out.header = {"l", "w", "delta", "kappa", "nu", "algebraically_extremal", "note"};
  json rows = json::array();
  for (const auto& row : results) {
    if (!row.r) {
      rows.push_back({{"l", l}, {"w", row.w}, {"delta", 0}, {"note", "empty space"}});
      out.rows.push_back({std::to_string(l), std::to_string(row.w), "0", "", "", "", "empty space"});
      continue;
    }
    const auto& r = *row.r;
    const std::string note = r.depth_l_impossible ? "w - 2l = 2" : "";
    rows.push_back({{"l", l},
                    {"w", r.w},
                    {"delta", r.delta},
                    {"kappa", r.kappa},
                    {"nu", r.nu},
                    {"algebraically_extremal", r.algebraically_extremal},
                    {"note", note}});
    out.rows.push_back({std::to_string(l), std::to_string(r.w), std::to_string(r.delta), std::to_string(r.kappa),
                        std::to_string(r.nu), yes_no(r.algebraically_extremal), note});
  }
  out.doc["rows"] = rows;
  return out;
}

Output cmd_wronskian(int l, int w, const std::string& form) {
  QMPoly f;
  int nu_f = 0;
  if (form.empty()) {
    const auto r = numax_and_form(l, w);
    f = r.form_poly;
    nu_f = r.nu;
  } else {
    f = parse_poly(form);
    if (f.is_zero()) throw DomainError("--form is zero");
    if (f.weight() != w) throw DomainError("--form does not have weight " + std::to_string(w));
    nu_f = *expand(f, dim_qm(l, w) + 1).q_valuation();
  }
  const ZQMPoly W = wronskian(f, l);
  const QMPoly g = W.coeff(0);
  const int nu = modular_valuation(g);
  Output out;
  out.doc = {{"l", l},
             {"w", w},
             {"f", poly_json(f)},
             {"nu_f", nu_f},
             {"W", poly_json(g)},
             {"weight", *W.weight()},
             {"twopi_exp", W.twopi_exp()},
             {"nu", nu}};
  out.summary = {{"f", poly_text(f)},
                 {"W", poly_text(g)},
                 {"weight", std::to_string(*W.weight())},
                 {"twopi_exp", std::to_string(W.twopi_exp())},
                 {"nu", std::to_string(nu)},
                 {"nu_f", std::to_string(nu_f)}};
  return out;
}

Output cmd_depth1(const std::string& check, const std::string& k_text, int w, int prec, int trials, int i_max,
                  const std::string& tamper) {
  Output out;
  out.doc["check"] = check;
  auto integer_k = [&]() {
    const Rational k = parse_rational(k_text);
    if (k.get_den() != 1 || k < 0) throw DomainError("--check " + check + " needs a non-negative integer --k");
    return static_cast<int>(k.get_num().get_si());
  };
  std::vector<Rational> ks = default_k_samples();
  if (!k_text.empty() && (check == "lax1" || check == "lax2" || check == "eigen")) ks = {parse_rational(k_text)};
  MuFunction mu_fn = mu;
  if (!tamper.empty()) {
    const Rational t = parse_rational(tamper);
    mu_fn = [t](const Rational& k) -> Rational { return mu(k) + t; };
    out.doc["mu_tamper"] = to_string(t);
  }
  bool ok = true;
  if (check == "ode") {
    const int k = k_text.empty() ? 1 : integer_k();
    const USeries r = ode_residual(k, prec);
    ok = r.is_zero();
    out.doc["k"] = k;
    out.doc["residual"] = series_json(r);
    out.summary = {{"k", std::to_string(k)}, {"residual_zero", yes_no(ok)}, {"u_prec", std::to_string(r.prec())}};
  } else if (check == "kk") {
    const USeries r = kk_ode_residual(w, prec);
    ok = r.is_zero();
    out.doc["w"] = w;
    out.doc["residual"] = series_json(r);
    out.summary = {{"w", std::to_string(w)}, {"residual_zero", yes_no(ok)}};
  } else if (check == "contiguity") {
    const auto path = g_series_by_contiguity(i_max, prec, mu_fn);
    json rows = json::array();
    out.header = {"i", "agrees"};
    for (int i = 0; i <= i_max; ++i) {
      const bool same = path[static_cast<std::size_t>(i)] == g_series(i, prec);
      ok = ok && same;
      rows.push_back({{"i", i}, {"agrees", same}});
      out.rows.push_back({std::to_string(i), yes_no(same)});
    }
    out.doc["rows"] = rows;
    out.summary = {{"i_max", std::to_string(i_max)}, {"prec", std::to_string(prec)}, {"agree", yes_no(ok)}};
  } else if (check == "eigen") {
    json rows = json::array();
    out.header = {"k", "raw", "normalized", "expected"};
    for (const auto& k : ks) {
      const auto r = eigen_check(k, prec);
      ok = ok && r.normalized == k + 1;
      rows.push_back({{"k", to_string(k)}, {"raw", to_string(r.raw)}, {"normalized", to_string(r.normalized)},
                      {"compared_u_prec", r.compared_prec}});
      out.rows.push_back({to_string(k), to_string(r.raw), to_string(r.normalized), to_string(Rational(k + 1))});
    }
    out.doc["rows"] = rows;
  } else if (check == "lax1" || check == "lax2") {
    const auto r = check == "lax1" ? lax_check_1(ks, prec, trials) : lax_check_2(ks, prec, trials, 2, mu_fn);
    ok = r.holds && r.holds_mu_one.value_or(true);
    out.doc["holds"] = r.holds;
    out.doc["trials"] = r.trials;
    out.doc["k_samples"] = r.k_samples;
    out.doc["min_compared_u_prec"] = r.min_compared_prec;
    if (r.holds_mu_one) out.doc["holds_mu_one"] = *r.holds_mu_one;
    if (r.literal_sign_holds) out.doc["literal_sign_holds"] = *r.literal_sign_holds;
    if (!r.counterexample.empty()) out.doc["counterexample"] = r.counterexample;
    out.summary = {{"holds", yes_no(r.holds)}, {"trials", std::to_string(r.trials)}};
    if (r.holds_mu_one) out.summary.push_back({"holds_mu_one", yes_no(*r.holds_mu_one)});
    if (r.literal_sign_holds) out.summary.push_back({"literal_sign_holds", yes_no(*r.literal_sign_holds)});
    if (!r.counterexample.empty()) out.summary.push_back({"counterexample", r.counterexample});
  } else if (check == "denoms") {
    const int k = k_text.empty() ? 1 : integer_k();
    const auto fp = denominator_primes(f_1_6k(k, prec));
    const auto gp = denominator_primes(g_series(k, prec));
    json fj = json::array(), gj = json::array();
    for (const auto& p : fp) {
      fj.push_back(to_string(p));
      ok = ok && p < 6 * k;
    }
    for (const auto& p : gp) gj.push_back(to_string(p));
    out.doc["k"] = k;
    out.doc["f_denominator_primes"] = fj;
    out.doc["g_denominator_primes"] = gj;
    out.doc["all_below_6k"] = ok;
    out.summary = {{"k", std::to_string(k)}, {"f_denominator_primes", fj.dump()},
                   {"g_denominator_primes", gj.dump()}, {"all_below_6k", yes_no(ok)}};
  } else {
    throw DomainError("unknown --check '" + check + "'");
  }
  out.doc["passed"] = ok;
  out.exit_code = ok ? 0 : 1;
  return out;
}

Output cmd_leech(int a_max) {
  const auto r = divisibility_scan(a_max);
  Output out;
  json shells = json::array();
  out.header = {"a", "shell_size"};
  for (const auto& [a, n] : r.shells) {
    shells.push_back(json::array({a, to_string(n)}));
    out.rows.push_back({std::to_string(a), to_string(n)});
  }
  out.doc = {{"prec", r.prec},
             {"divisibility_393120", r.divisibility_ok},
             {"f114_integral", r.f114_integral},
             {"f114_nonnegative", r.f114_nonnegative},
             {"div_5_7_13", r.div_5_7_13},
             {"div_9", r.div_9},
             {"div_27", r.div_27},
             {"div_32", r.div_32},
             {"failures", r.failures},
             {"shells", shells}};
  out.summary = {{"prec", std::to_string(r.prec)},
                 {"divisibility_393120", yes_no(r.divisibility_ok)},
                 {"f114_integral", yes_no(r.f114_integral)},
                 {"f114_nonnegative", yes_no(r.f114_nonnegative)}};
  const bool ok = r.divisibility_ok && r.f114_integral && r.f114_nonnegative;
  out.exit_code = ok ? 0 : 1;
  return out;
}

json scan_row_json(const ScanRow& r) {
  json j = {{"l", r.l}, {"w", r.w}, {"skipped", r.skipped}};
  if (!r.skipped) {
    j["nu"] = r.nu;
    j["delta"] = r.delta;
    j["integral"] = r.integral;
    j["positive"] = r.positive;
    j["max_denominator_prime"] = r.max_denominator_prime ? json(to_string(*r.max_denominator_prime)) : json(nullptr);
    j["prec_used"] = r.prec_used;
  }
  j["note"] = r.note;
  return j;
}

std::vector<std::string> scan_row_fields(const ScanRow& r) {
  if (r.skipped) return {std::to_string(r.l), std::to_string(r.w), "", std::to_string(r.delta), "", "", "", "", r.note};
  return {std::to_string(r.l),     std::to_string(r.w),     std::to_string(r.nu),
          std::to_string(r.delta), yes_no(r.integral),      yes_no(r.positive),
          r.max_denominator_prime ? to_string(*r.max_denominator_prime) : "",
          std::to_string(r.prec_used), r.note};
}

Output cmd_scan_integrality(int l_max, int w_max, int prec, unsigned threads, bool conjecture1) {
  Output out;
  out.header = {"l", "w", "nu", "delta", "integral", "positive", "max_denominator_prime", "prec_used", "note"};
  std::vector<ScanRow> rows;
  if (conjecture1) {
    const auto rep = conjecture1_scan(l_max, w_max, prec, threads);
    rows = rep.rows;
    out.doc["violations"] = rep.violations;
    out.summary = {{"status", "observed to precision " + std::to_string(prec) + ", not proved"},
                   {"violations", std::to_string(rep.violations.size())}};
    for (const auto& v : rep.violations) out.summary.push_back({"violation", v});
    out.exit_code = rep.violations.empty() ? 0 : 1;
  } else {
    rows = scan_integrality(l_max, w_max, prec, threads);
    out.summary = {{"status", "observed to precision " + std::to_string(prec) + ", not proved"}};
  }
  json arr = json::array();
  for (const auto& r : rows) {
    arr.push_back(scan_row_json(r));
    out.rows.push_back(scan_row_fields(r));
  }
  out.doc["prec"] = prec;
  out.doc["rows"] = arr;
  return out;
}

Output cmd_verify(const Settings& s, const std::string& profile_name, const std::string& tamper,
                  const std::string& report_path) {
  Profile p = profile_by_name("full");
  if (auto it = s.config.find("profile"); it != s.config.end()) apply_config_value(p, "profile", it->second);
  for (const auto& [k, v] : s.config) {
    if (k != "profile") apply_config_value(p, k, v);
  }
  if (!profile_name.empty()) apply_config_value(p, "profile", profile_name);
  if (s.threads) p.threads = s.threads;
  if (!tamper.empty()) p.mu_tamper = parse_rational(tamper);
  const auto rep = verify_all(p);
  Output out;
  json checks = json::array();
  out.header = {"id", "check", "status", "seconds", "detail"};
  for (const auto& c : rep.checks) {
    std::ostringstream secs;
    secs.precision(3);
    secs << std::fixed << c.seconds;
    checks.push_back({{"id", c.id}, {"name", c.name}, {"status", to_string(c.status)}, {"seconds", c.seconds},
                      {"detail", c.detail}});
    out.rows.push_back({std::to_string(c.id), c.name, to_string(c.status), secs.str(), c.detail});
  }
  out.doc = {{"profile", rep.profile}, {"exit_code", rep.exit_code()}, {"checks", checks}};
  if (p.mu_tamper) out.doc["mu_tamper"] = to_string(*p.mu_tamper);
  out.summary = {{"profile", rep.profile}, {"exit_code", std::to_string(rep.exit_code())}};
  if (!report_path.empty()) {
    std::ofstream f(report_path);
    if (!f) throw DomainError("cannot write report to " + report_path);
    f << out.doc.dump(2) << "\n";
  }
  out.exit_code = rep.exit_code();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with quasi-modular forms"};
  app.require_subcommand(1);
  bool as_json = false, as_csv = false;
  std::string config_path;
  unsigned threads = 0;
  std::optional<int> prec_flag;
  app.add_flag("--json", as_json, "JSON output");
  app.add_flag("--csv", as_csv, "CSV output (RFC 4180)");
  app.add_option("--config", config_path, "key = value file; flags override it")->check(CLI::ExistingFile);
  app.add_option("--threads", threads, "worker threads (0: all cores)");

  auto prec_option = [&](CLI::App* sub, const std::string& help) {
    sub->add_option("--prec", prec_flag, help)->check(CLI::PositiveNumber);
  };

  std::string form, name;
  auto* expand_cmd = app.add_subcommand("expand", "q-expansion of a polynomial in E2, E4, E6");
  expand_cmd->add_option("--form", form, "[[i,j,k,\"c\"],...] for c E2^i E4^j E6^k");
  expand_cmd->add_option("--name", name, "E2, E4, E6 or Delta");
  prec_option(expand_cmd, "number of q-coefficients");

  int l = 0, w = -1, w_max = -1, l_max = 0, a_max = 0, trials = 5, i_max = 20;
  bool conjecture = false;
  auto* dims_cmd = app.add_subcommand("dims", "dimensions and defects");
  dims_cmd->add_option("--l", l)->required();
  dims_cmd->add_option("--w", w, "single weight");
  dims_cmd->add_option("--w-max", w_max, "all even weights up to this");
  dims_cmd->add_flag("--conjecture", conjecture, "compare kappa_l(w) with the a(n) identities");

  auto* ext_cmd = app.add_subcommand("extremal", "normalized extremal form f_{l,w}");
  ext_cmd->add_option("--l", l)->required();
  ext_cmd->add_option("--w", w)->required();
  prec_option(ext_cmd, "fixed q-precision (default: escalate)");

  auto* scan_ext_cmd = app.add_subcommand("scan-extremal", "vanishing orders along a depth");
  scan_ext_cmd->add_option("--l", l)->required();
  scan_ext_cmd->add_option("--w-max", w_max)->required();

  auto* wr_cmd = app.add_subcommand("wronskian", "D-Wronskian of the vector attached to a form");
  wr_cmd->add_option("--l", l)->required();
  wr_cmd->add_option("--w", w)->required();
  wr_cmd->add_option("--form", form, "form of weight w (default f_{l,w})");

  std::string check = "ode", k_text, tamper;
  auto* d1_cmd = app.add_subcommand("depth1", "hypergeometric depth-one checks");
  d1_cmd->add_option("--check", check)
      ->check(CLI::IsMember({"ode", "kk", "contiguity", "lax1", "lax2", "eigen", "denoms"}));
  d1_cmd->add_option("--k", k_text, "parameter k (rational)");
  d1_cmd->add_option("--w", w, "weight for --check kk");
  d1_cmd->add_option("--trials", trials, "random elements for lax checks")->check(CLI::NonNegativeNumber);
  d1_cmd->add_option("--i-max", i_max, "last index for --check contiguity")->check(CLI::NonNegativeNumber);
  d1_cmd->add_option("--mu-tamper", tamper, "add a constant to mu(k)");
  prec_option(d1_cmd, "q-precision");

  auto* leech_cmd = app.add_subcommand("leech", "Leech lattice theta series");
  leech_cmd->add_option("--a-max", a_max)->required()->check(CLI::PositiveNumber);

  auto* scan_cmd = app.add_subcommand("scan-integrality", "integrality and positivity of f_{l,w}");
  scan_cmd->add_option("--l-max", l_max)->required()->check(CLI::NonNegativeNumber);
  scan_cmd->add_option("--w-max", w_max)->required()->check(CLI::NonNegativeNumber);
  scan_cmd->add_flag("--conjecture1", conjecture, "check denominators < w and positivity (l <= 4)");
  prec_option(scan_cmd, "number of q-coefficients");

  std::string profile, report;
  auto* verify_cmd = app.add_subcommand("verify", "run the verification suite");
  verify_cmd->add_option("--profile", profile, "full or quick");
  verify_cmd->add_option("--mu-tamper", tamper, "fault injection: add a constant to mu(k)");
  verify_cmd->add_option("--report", report, "write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 3;
  }
  if (as_json && as_csv) {
    std::cerr << "--json and --csv are exclusive\n";
    return 3;
  }

  try {
    Settings s;
    s.format = as_json ? Format::Json : as_csv ? Format::Csv : Format::Text;
    load_config(s, config_path);
    if (prec_flag) s.prec = *prec_flag;
    if (s.prec < 1) throw DomainError("precision must be positive");
    s.threads = threads;
    if (s.threads == 0) {
      if (auto it = s.config.find("threads"); it != s.config.end()) s.threads = static_cast<unsigned>(std::stoi(it->second));
    }

    Output out;
    if (*expand_cmd) {
      out = cmd_expand(s, form, name);
    } else if (*dims_cmd) {
      out = cmd_dims(l, w, w_max, conjecture);
    } else if (*ext_cmd) {
      out = cmd_extremal(l, w, prec_flag);
    } else if (*scan_ext_cmd) {
      out = cmd_scan_extremal(l, w_max, s.threads);
    } else if (*wr_cmd) {
      out = cmd_wronskian(l, w, form);
    } else if (*d1_cmd) {
      out = cmd_depth1(check, k_text, w < 0 ? 0 : w, s.prec, trials, i_max, tamper);
    } else if (*leech_cmd) {
      out = cmd_leech(a_max);
    } else if (*scan_cmd) {
      out = cmd_scan_integrality(l_max, w_max, s.prec, s.threads, conjecture);
    } else if (*verify_cmd) {
      out = cmd_verify(s, profile, tamper, report);
    }
    print(out, s.format);
    return out.exit_code;
  } catch (const PrecisionError& e) {
    std::cerr << "precision exhausted: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "check failed: " << e.what() << "\n";
    return 1;
  }
}
