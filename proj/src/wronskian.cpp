#include "qmx/wronskian.hpp"

#include <string>

#include "qmx/dims.hpp"

namespace qmx {

namespace {

void check_input(const QMPoly& f, int l) {
  if (l < 0) throw DomainError("depth bound l must be non-negative");
  if (f.is_zero()) throw DomainError("F_f needs a nonzero form");
  if (!f.weight()) throw DomainError("F_f needs a weight-homogeneous form");
  if (*f.depth() > l) {
    throw DomainError("form has depth " + std::to_string(*f.depth()) + " > l = " + std::to_string(l));
  }
}

Integer falling(int n, int k) {
  Integer r = 1;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

// Laplace expansion down the columns; minor[S] is the determinant of rows S
// against the first |S| columns.
ZQMPoly determinant(const std::vector<std::vector<ZQMPoly>>& m) {
  const std::size_t n = m.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<ZQMPoly> minor(full + 1);
  minor[0] = ZQMPoly(QMPoly::constant(1));
  for (std::size_t s = 1; s <= full; ++s) {
    const int col = __builtin_popcountll(s) - 1;
    ZQMPoly acc;
    // Expanding along column col: sign (-1)^(position of r in S + col).
    int sign = col % 2 == 0 ? 1 : -1;
    for (std::size_t r = 0; r < n; ++r) {
      if (!(s & (std::size_t{1} << r))) continue;
      const auto& rest = minor[s & ~(std::size_t{1} << r)];
      if (!rest.is_zero() && !m[r][static_cast<std::size_t>(col)].is_zero()) {
        auto term = m[r][static_cast<std::size_t>(col)] * rest;
        acc = sign > 0 ? acc + term : acc - term;
      }
      sign = -sign;
    }
    minor[s] = std::move(acc);
  }
  return minor[full];
}

}  // namespace

std::vector<QMPoly> pf_coefficients(const QMPoly& f, int l) {
  check_input(f, l);
  std::vector<QMPoly> out;
  QMPoly partial = f;
  Rational scale = 1;
  for (int r = 0; r <= l; ++r) {
    out.push_back(scale * partial);
    partial = partial.partial_E2();
    scale = scale * frac(12, r + 1);
  }
  return out;
}

std::vector<ZQMPoly> f_vector(const QMPoly& f, int l) {
  const auto fhat = pf_coefficients(f, l);
  std::vector<ZQMPoly> out;
  for (int j = 0; j <= l; ++j) {
    ZQMPoly::Coeffs c;
    for (int r = 0; r <= l - j; ++r) {
      c.emplace(l - r - j, Rational(falling(l - r, j)) * fhat[static_cast<std::size_t>(r)]);
    }
    out.emplace_back(std::move(c), j - l);
  }
  return out;
}

ZQMPoly wronskian(const QMPoly& f, int l) {
  const auto F = f_vector(f, l);
  const std::size_t n = F.size();
  std::vector<std::vector<ZQMPoly>> m(n);
  for (std::size_t j = 0; j < n; ++j) {
    m[j].push_back(F[j]);
    for (std::size_t i = 1; i < n; ++i) m[j].push_back(ramanujan_D(m[j].back()));
  }
  ZQMPoly W = determinant(m);

  const int w = *f.weight();
  const std::string where = " for l=" + std::to_string(l) + ", w=" + std::to_string(w);
  if (W.is_zero()) throw InvariantError("Wronskian vanishes" + where);
  if (!W.is_Z_free()) throw InvariantError("Wronskian is not Z-free" + where);
  if (!W.is_E2_free()) throw InvariantError("Wronskian is not E2-free" + where);
  if (W.weight() != (l + 1) * w) throw InvariantError("Wronskian has the wrong weight" + where);
  if (W.twopi_exp() != -l * (l + 1) / 2) throw InvariantError("Wronskian has the wrong (2 pi i)-exponent" + where);
  return W;
}

int modular_valuation(const QMPoly& g) {
  if (g.is_zero()) throw DomainError("valuation of the zero form");
  const auto k = g.weight();
  if (!k || g.depth() != 0) throw DomainError("modular_valuation needs a homogeneous E2-free form");
  const int count = std::max(dim_modular(*k), 1);
  const auto v = expand(g, count).q_valuation();
  if (!v) throw InvariantError("nonzero modular form vanishes to order d(k)");
  return *v;
}

MultiplicityReport multiplicity_certificate(int l, int w, const ExtremalOptions& opts) {
  const auto ext = numax_and_form(l, w, opts);
  MultiplicityReport rep;
  rep.l = l;
  rep.w = w;
  rep.delta = ext.delta;
  rep.kappa = ext.kappa;
  rep.nu_f = ext.nu;
  rep.W = wronskian(ext.form_poly, l).coeff(0);
  rep.nu_W = modular_valuation(rep.W);
  rep.d_bound = dim_modular((l + 1) * w) - 1;
  rep.chain_holds = rep.nu_f <= rep.nu_W && rep.nu_W <= rep.d_bound && rep.nu_f <= rep.delta - 1 + rep.kappa;
  return rep;
}

}  // namespace qmx
