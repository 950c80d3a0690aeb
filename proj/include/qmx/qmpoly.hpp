#pragma once

#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "qmx/rational.hpp"
#include "qmx/useries.hpp"

namespace qmx {

/// Exponent triple of E2^e2 E4^e4 E6^e6. Ordered lexicographically with the
/// E2-exponent first.
struct Exponents {
  int e2 = 0;
  int e4 = 0;
  int e6 = 0;

  int weight() const noexcept { return 2 * e2 + 4 * e4 + 6 * e6; }
  auto operator<=>(const Exponents&) const = default;
};

/// Element of Q[E2, E4, E6]; quasi-modular forms live here symbolically.
class QMPoly {
 public:
  using Terms = std::map<Exponents, Rational>;

  QMPoly() = default;
  explicit QMPoly(Terms terms);

  static QMPoly constant(const Rational& c);
  static QMPoly monomial(const Exponents& e, const Rational& c = 1);
  static QMPoly E2() { return monomial({1, 0, 0}); }
  static QMPoly E4() { return monomial({0, 1, 0}); }
  static QMPoly E6() { return monomial({0, 0, 1}); }

  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_homogeneous() const;
  /// Common weight of all monomials; nullopt for zero or mixed weights.
  std::optional<int> weight() const;
  /// Highest E2-exponent; nullopt for zero.
  std::optional<int> depth() const;

  /// Formal partial derivative with respect to E2.
  QMPoly partial_E2() const;

  friend bool operator==(const QMPoly&, const QMPoly&) = default;

 private:
  Terms terms_;
};

QMPoly operator+(const QMPoly& a, const QMPoly& b);
QMPoly operator-(const QMPoly& a, const QMPoly& b);
QMPoly operator-(const QMPoly& a);
QMPoly operator*(const QMPoly& a, const QMPoly& b);
QMPoly operator*(const Rational& c, const QMPoly& a);
QMPoly pow(const QMPoly& a, unsigned n);

/// Ramanujan's derivation:
///   D(E2) = (E2^2 - E4)/12, D(E4) = (E2 E4 - E6)/3, D(E6) = (E2 E6 - E4^2)/2.
QMPoly ramanujan_D(const QMPoly& f);

/// (E4^3 - E6^2)/1728.
QMPoly delta_form();

enum class Eisenstein { E2, E4, E6 };

/// q-expansion with q_prec known coefficients.
USeries eisenstein(Eisenstein which, int q_prec);

/// Memoizing evaluator of QMPoly q-expansions at a fixed q-precision.
/// Monomial expansions are built incrementally (one product each) and shared
/// between calls. Thread-safe.
class Expander {
 public:
  explicit Expander(int q_prec);

  int q_prec() const noexcept { return q_prec_; }
  USeries monomial(const Exponents& e);
  USeries expand(const QMPoly& f);

 private:
  USeries monomial_locked(const Exponents& e);

  int q_prec_;
  USeries e2_, e4_, e6_;
  std::map<Exponents, USeries> cache_;
  std::mutex mutex_;
};

/// One-shot expansion to q_prec coefficients.
USeries expand(const QMPoly& f, int q_prec);

}  // namespace qmx
