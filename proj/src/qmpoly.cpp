#include "qmx/qmpoly.hpp"

#include <algorithm>
#include <string>

namespace qmx {

QMPoly::QMPoly(Terms terms) {
  for (auto& [e, c] : terms) {
    if (e.e2 < 0 || e.e4 < 0 || e.e6 < 0) throw DomainError("negative exponent in QMPoly");
    if (c != 0) terms_.emplace(e, std::move(c));
  }
}

QMPoly QMPoly::constant(const Rational& c) { return QMPoly({{Exponents{}, c}}); }

QMPoly QMPoly::monomial(const Exponents& e, const Rational& c) { return QMPoly({{e, c}}); }

bool QMPoly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int w = terms_.begin()->first.weight();
  return std::all_of(terms_.begin(), terms_.end(),
                     [w](const auto& t) { return t.first.weight() == w; });
}

std::optional<int> QMPoly::weight() const {
  if (terms_.empty() || !is_homogeneous()) return std::nullopt;
  return terms_.begin()->first.weight();
}

std::optional<int> QMPoly::depth() const {
  if (terms_.empty()) return std::nullopt;
  // Lexicographic order puts the largest E2-exponent last.
  return terms_.rbegin()->first.e2;
}

QMPoly QMPoly::partial_E2() const {
  Terms out;
  for (const auto& [e, c] : terms_) {
    if (e.e2 == 0) continue;
    out[{e.e2 - 1, e.e4, e.e6}] += c * e.e2;
  }
  return QMPoly(std::move(out));
}

QMPoly operator+(const QMPoly& a, const QMPoly& b) {
  QMPoly::Terms t = a.terms();
  for (const auto& [e, c] : b.terms()) t[e] += c;
  return QMPoly(std::move(t));
}

QMPoly operator-(const QMPoly& a) {
  QMPoly::Terms t = a.terms();
  for (auto& [e, c] : t) c = -c;
  return QMPoly(std::move(t));
}

QMPoly operator-(const QMPoly& a, const QMPoly& b) { return a + (-b); }

QMPoly operator*(const Rational& c, const QMPoly& a) {
  if (c == 0) return {};
  QMPoly::Terms t = a.terms();
  for (auto& [e, x] : t) x *= c;
  return QMPoly(std::move(t));
}

QMPoly operator*(const QMPoly& a, const QMPoly& b) {
  QMPoly::Terms t;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      t[{ea.e2 + eb.e2, ea.e4 + eb.e4, ea.e6 + eb.e6}] += ca * cb;
    }
  }
  return QMPoly(std::move(t));
}

QMPoly pow(const QMPoly& a, unsigned n) {
  QMPoly result = QMPoly::constant(1);
  QMPoly base = a;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

QMPoly ramanujan_D(const QMPoly& f) {
  // D(E2^i E4^j E6^k) = i E2^{i-1} D(E2) E4^j E6^k + ... expanded in place.
  QMPoly::Terms t;
  for (const auto& [e, c] : f.terms()) {
    const auto [i, j, k] = e;
    if (i > 0) {
      const Rational s = c * frac(i, 12);
      t[{i + 1, j, k}] += s;
      t[{i - 1, j + 1, k}] -= s;
    }
    if (j > 0) {
      const Rational s = c * frac(j, 3);
      t[{i + 1, j, k}] += s;
      t[{i, j - 1, k + 1}] -= s;
    }
    if (k > 0) {
      const Rational s = c * frac(k, 2);
      t[{i + 1, j, k}] += s;
      t[{i, j + 2, k - 1}] -= s;
    }
  }
  return QMPoly(std::move(t));
}

QMPoly delta_form() {
  return frac(1, 1728) * (QMPoly::monomial({0, 3, 0}) - QMPoly::monomial({0, 0, 2}));
}

USeries eisenstein(Eisenstein which, int q_prec) {
  if (q_prec < 0) throw DomainError("negative precision");
  long scale = 0;
  unsigned k = 0;
  switch (which) {
    case Eisenstein::E2: scale = -24; k = 1; break;
    case Eisenstein::E4: scale = 240; k = 3; break;
    case Eisenstein::E6: scale = -504; k = 5; break;
  }
  std::vector<Rational> c(static_cast<std::size_t>(q_prec));
  if (q_prec > 0) c[0] = 1;
  for (int n = 1; n < q_prec; ++n) c[static_cast<std::size_t>(n)] = Rational(sigma_k(k, n) * scale);
  return USeries::from_q_coefficients(c);
}

Expander::Expander(int q_prec)
    : q_prec_(q_prec),
      e2_(eisenstein(Eisenstein::E2, q_prec)),
      e4_(eisenstein(Eisenstein::E4, q_prec)),
      e6_(eisenstein(Eisenstein::E6, q_prec)) {}

USeries Expander::monomial(const Exponents& e) {
  std::lock_guard lock(mutex_);
  return monomial_locked(e);
}

USeries Expander::monomial_locked(const Exponents& e) {
  if (e == Exponents{}) return USeries::constant(1, 2 * q_prec_);
  if (auto it = cache_.find(e); it != cache_.end()) return it->second;
  USeries value;
  if (e.e2 > 0) {
    value = monomial_locked({e.e2 - 1, e.e4, e.e6}) * e2_;
  } else if (e.e4 > 0) {
    value = monomial_locked({0, e.e4 - 1, e.e6}) * e4_;
  } else {
    value = monomial_locked({0, 0, e.e6 - 1}) * e6_;
  }
  return cache_.emplace(e, std::move(value)).first->second;
}

USeries Expander::expand(const QMPoly& f) {
  USeries sum = USeries::zero(2 * q_prec_);
  for (const auto& [e, c] : f.terms()) sum = sum + c * monomial(e);
  return sum;
}

USeries expand(const QMPoly& f, int q_prec) {
  Expander ex(q_prec);
  return ex.expand(f);
}

}  // namespace qmx
