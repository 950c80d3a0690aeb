#include "qmx/zqmpoly.hpp"

#include <algorithm>
#include <string>

namespace qmx {

ZQMPoly::ZQMPoly(Coeffs coeffs, int twopi_exp) : twopi_exp_(twopi_exp) {
  for (auto& [n, c] : coeffs) {
    if (n < 0) throw DomainError("negative Z-degree in ZQMPoly");
    if (!c.is_zero()) coeffs_.emplace(n, std::move(c));
  }
}

ZQMPoly::ZQMPoly(QMPoly constant, int twopi_exp) : ZQMPoly(Coeffs{{0, std::move(constant)}}, twopi_exp) {}

QMPoly ZQMPoly::coeff(int n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? QMPoly() : it->second;
}

bool ZQMPoly::is_Z_free() const { return coeffs_.empty() || (coeffs_.size() == 1 && coeffs_.begin()->first == 0); }

bool ZQMPoly::is_E2_free() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& t) { return t.second.depth() == 0; });
}

std::optional<int> ZQMPoly::weight() const {
  std::optional<int> w;
  for (const auto& [n, c] : coeffs_) {
    auto cw = c.weight();
    if (!cw) return std::nullopt;
    const int total = *cw - 2 * n;
    if (w && *w != total) return std::nullopt;
    w = total;
  }
  return w;
}

namespace {

int common_grade(const ZQMPoly& a, const ZQMPoly& b) {
  if (a.is_zero()) return b.twopi_exp();
  if (b.is_zero() || a.twopi_exp() == b.twopi_exp()) return a.twopi_exp();
  throw InvariantError("adding ZQMPoly values with (2 pi i)-exponents " + std::to_string(a.twopi_exp()) +
                       " and " + std::to_string(b.twopi_exp()));
}

}  // namespace

ZQMPoly operator+(const ZQMPoly& a, const ZQMPoly& b) {
  const int grade = common_grade(a, b);
  ZQMPoly::Coeffs c = a.coeffs();
  for (const auto& [n, x] : b.coeffs()) c[n] = c[n] + x;
  return ZQMPoly(std::move(c), grade);
}

ZQMPoly operator-(const ZQMPoly& a) { return Rational(-1) * a; }

ZQMPoly operator-(const ZQMPoly& a, const ZQMPoly& b) { return a + (-b); }

ZQMPoly operator*(const ZQMPoly& a, const ZQMPoly& b) {
  ZQMPoly::Coeffs c;
  for (const auto& [na, xa] : a.coeffs()) {
    for (const auto& [nb, xb] : b.coeffs()) c[na + nb] = c[na + nb] + xa * xb;
  }
  return ZQMPoly(std::move(c), a.twopi_exp() + b.twopi_exp());
}

ZQMPoly operator*(const Rational& c, const ZQMPoly& a) {
  ZQMPoly::Coeffs out;
  for (const auto& [n, x] : a.coeffs()) out.emplace(n, c * x);
  return ZQMPoly(std::move(out), a.twopi_exp());
}

ZQMPoly ramanujan_D(const ZQMPoly& p) {
  ZQMPoly::Coeffs c;
  for (const auto& [n, x] : p.coeffs()) {
    c[n] = c[n] + ramanujan_D(x);
    if (n > 0) c[n - 1] = c[n - 1] + Rational(n) * x;
  }
  return ZQMPoly(std::move(c), p.twopi_exp());
}

std::map<int, USeries> expand(const ZQMPoly& p, int q_prec) {
  Expander ex(q_prec);
  std::map<int, USeries> out;
  for (const auto& [n, x] : p.coeffs()) out.emplace(n, ex.expand(x));
  return out;
}

}  // namespace qmx
