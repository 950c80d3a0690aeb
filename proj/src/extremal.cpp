#include "qmx/extremal.hpp"

#include <algorithm>
#include <string>

#include "qmx/linalg.hpp"

namespace qmx {

namespace {

struct AdaptedElement {
  int e2;
  int delta_power;
  int e4;
  int e6;
};

std::vector<AdaptedElement> adapted_elements(int l, int w) {
  std::vector<AdaptedElement> out;
  if (w < 0 || w % 2 != 0) return out;
  for (int i = 0; i <= l && 2 * i <= w; ++i) {
    const int rest = w - 2 * i;
    for (int c = 0; 12 * c <= rest; ++c) {
      const int m = rest - 12 * c;
      if (m == 2) continue;
      if (m % 4 == 0) {
        out.push_back({i, c, m / 4, 0});
      } else {
        out.push_back({i, c, (m - 6) / 4, 1});
      }
    }
  }
  return out;
}

QMPoly element_poly(const AdaptedElement& e) {
  return QMPoly::monomial({e.e2, e.e4, e.e6}) * pow(delta_form(), static_cast<unsigned>(e.delta_power));
}

std::string cell(int l, int w) {
  return "(l=" + std::to_string(l) + ", w=" + std::to_string(w) + ")";
}

std::vector<linalg::IntRow> coefficient_rows(const std::vector<USeries>& series, int columns) {
  std::vector<linalg::IntRow> rows;
  rows.reserve(series.size());
  for (const auto& s : series) {
    std::vector<Rational> r(static_cast<std::size_t>(columns));
    for (int j = 0; j < columns; ++j) r[static_cast<std::size_t>(j)] = s.q_coeff(j);
    rows.push_back(linalg::to_primitive_integer_row(r));
  }
  return rows;
}

QMPoly combine(const std::vector<QMPoly>& polys, const linalg::IntRow& combo, const Rational& scale) {
  QMPoly out;
  for (std::size_t j = 0; j < polys.size(); ++j) {
    if (combo[j] != 0) out = out + Rational(combo[j]) * scale * polys[j];
  }
  return out;
}

}  // namespace

bool valid_cell(int l, int w) { return w >= 0 && w % 2 == 0 && l >= 0 && 2 * l <= w && w - 2 * l != 2; }

std::vector<QMPoly> adapted_basis(int l, int w) {
  std::vector<QMPoly> out;
  for (const auto& e : adapted_elements(l, w)) out.push_back(element_poly(e));
  return out;
}

ExtremalSolver::ExtremalSolver(int q_prec) : q_prec_(q_prec), expander_(q_prec) {}

USeries ExtremalSolver::delta_power(int c) {
  std::lock_guard lock(mutex_);
  if (delta_powers_.empty()) delta_powers_.push_back(USeries::constant(1, 2 * q_prec_));
  while (static_cast<int>(delta_powers_.size()) <= c) {
    if (delta_powers_.size() == 1) {
      delta_powers_.push_back(expander_.expand(delta_form()));
    } else {
      delta_powers_.push_back(delta_powers_.back() * delta_powers_[1]);
    }
  }
  return delta_powers_[static_cast<std::size_t>(c)];
}

std::vector<ExtremalSolver::Row> ExtremalSolver::basis_rows(int l, int w) {
  std::vector<Row> rows;
  for (const auto& e : adapted_elements(l, w)) {
    USeries s = expander_.monomial({e.e2, e.e4, e.e6}) * delta_power(e.delta_power);
    rows.push_back({element_poly(e), std::move(s)});
  }
  return rows;
}

ExtremalResult ExtremalSolver::solve(int l, int w) {
  const int delta = dim_qm(l, w);
  if (delta == 0) throw DomainError("M~_w^{<=l} is zero for " + cell(l, w));
  const auto rows = basis_rows(l, w);
  if (static_cast<int>(rows.size()) != delta) {
    throw InvariantError("adapted basis size differs from delta_l(w) at " + cell(l, w));
  }
  std::vector<USeries> series;
  std::vector<QMPoly> polys;
  for (const auto& r : rows) {
    series.push_back(r.series);
    polys.push_back(r.poly);
  }
  auto ech = linalg::echelon(coefficient_rows(series, q_prec_));
  if (!ech.null_rows.empty()) {
    throw PrecisionError("increase precision: " + std::to_string(ech.null_rows.size()) +
                         " basis combination(s) vanish through q^" + std::to_string(q_prec_ - 1) +
                         " at " + cell(l, w));
  }

  ExtremalResult res;
  res.l = l;
  res.w = w;
  res.delta = delta;
  res.kappa = kappa_stable(l);
  res.q_prec = q_prec_;
  res.depth_l_impossible = (w - 2 * l == 2);
  for (const auto& r : ech.rows) res.pivot_columns.push_back(r.pivot);

  const auto& last = ech.rows.back();
  res.nu = last.pivot;
  const Rational inv_lead = Rational(1) / Rational(last.entries[static_cast<std::size_t>(last.pivot)]);
  res.form_poly = combine(polys, last.combination, inv_lead);
  std::vector<Rational> coeffs(static_cast<std::size_t>(q_prec_));
  for (int j = 0; j < q_prec_; ++j) {
    coeffs[static_cast<std::size_t>(j)] = Rational(last.entries[static_cast<std::size_t>(j)]) * inv_lead;
  }
  res.expansion = USeries::from_q_coefficients(coeffs);
  res.depth_actual = res.form_poly.depth().value_or(0);
  res.algebraically_extremal = (res.nu == delta - 1) && (res.depth_actual == l);

  if (res.nu < delta - 1) {
    throw InvariantError("nu_max below delta - 1 at " + cell(l, w) + ": lower bound violated");
  }
  if (res.nu > delta - 1 + res.kappa) {
    throw InvariantError("nu_max = " + std::to_string(res.nu) + " exceeds delta - 1 + kappa_l = " +
                         std::to_string(delta - 1 + res.kappa) + " at " + cell(l, w));
  }
  return res;
}

std::vector<QMPoly> ExtremalSolver::diagonal_basis(int l, int w) {
  const int delta = dim_qm(l, w);
  if (delta == 0) throw DomainError("M~_w^{<=l} is zero for " + cell(l, w));
  if (q_prec_ < delta) throw PrecisionError("increase precision: diagonal basis needs q_prec >= delta");
  const auto rows = basis_rows(l, w);
  std::vector<USeries> series;
  std::vector<QMPoly> polys;
  for (const auto& r : rows) {
    series.push_back(r.series);
    polys.push_back(r.poly);
  }
  auto ech = linalg::echelon(coefficient_rows(series, delta));
  if (!ech.null_rows.empty()) {
    const auto& k = ech.null_rows.front().combination;
    std::vector<Rational> kernel(k.begin(), k.end());
    throw SingularBasisError("leading coefficient matrix U is singular at " + cell(l, w), kernel,
                             combine(polys, k, 1));
  }
  linalg::back_substitute(ech);
  std::vector<QMPoly> out;
  for (const auto& r : ech.rows) {
    const Rational inv = Rational(1) / Rational(r.entries[static_cast<std::size_t>(r.pivot)]);
    out.push_back(combine(polys, r.combination, inv));
  }
  return out;
}

ExtremalResult numax_and_form(int l, int w, const ExtremalOptions& opts) {
  if (opts.q_prec) {
    ExtremalSolver solver(*opts.q_prec);
    return solver.solve(l, w);
  }
  int prec = std::clamp(dim_qm(l, w) + kappa_stable(l) + opts.buffer, 1, std::max(opts.prec_cap, 1));
  for (;;) {
    try {
      ExtremalSolver solver(prec);
      return solver.solve(l, w);
    } catch (const PrecisionError&) {
      if (prec >= opts.prec_cap) throw;
      prec = std::min(2 * prec, opts.prec_cap);
    }
  }
}

bool is_algebraically_extremal(const QMPoly& f) {
  if (f.is_zero()) throw DomainError("is_algebraically_extremal: zero form");
  const auto w = f.weight();
  if (!w) throw DomainError("is_algebraically_extremal: form is not weight-homogeneous");
  const int l = *f.depth();
  const int delta = dim_qm(l, *w);
  int prec = delta + kappa_stable(l) + 8;
  for (int attempt = 0; attempt < 6; ++attempt, prec *= 2) {
    const auto v = expand(f, prec).q_valuation();
    if (v) return *v == delta - 1;
  }
  throw PrecisionError("increase precision: form vanishes through q^" + std::to_string(prec / 2 - 1));
}

std::vector<QMPoly> diagonal_basis(int l, int w, const ExtremalOptions& opts) {
  ExtremalSolver solver(opts.q_prec.value_or(dim_qm(l, w) + opts.buffer));
  return solver.diagonal_basis(l, w);
}

FlagReport flag_monotonicity_check(int w, const ExtremalOptions& opts) {
  if (w < 4 || w % 2 != 0) throw DomainError("flag check needs even w >= 4");
  FlagReport rep;
  rep.w = w;
  for (int l = 0; l <= w / 2; ++l) {
    if (l == w / 2 - 1) continue;
    rep.nu_by_depth.emplace_back(l, numax_and_form(l, w, opts).nu);
  }
  rep.strictly_increasing = std::adjacent_find(rep.nu_by_depth.begin(), rep.nu_by_depth.end(),
                                               [](const auto& a, const auto& b) {
                                                 return a.second >= b.second;
                                               }) == rep.nu_by_depth.end();
  return rep;
}

}  // namespace qmx
