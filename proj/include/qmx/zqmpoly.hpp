#pragma once

#include <map>
#include <optional>

#include "qmx/qmpoly.hpp"

namespace qmx {

/// Polynomial in Z over QMPoly, Z of weight -2 standing for 2*pi*i*z, so
/// D(Z) = 1. The represented analytic object is value * (2*pi*i)^twopi_exp.
class ZQMPoly {
 public:
  using Coeffs = std::map<int, QMPoly>;

  ZQMPoly() = default;
  ZQMPoly(Coeffs coeffs, int twopi_exp);
  explicit ZQMPoly(QMPoly constant, int twopi_exp = 0);

  const Coeffs& coeffs() const noexcept { return coeffs_; }
  int twopi_exp() const noexcept { return twopi_exp_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  /// Coefficient of Z^n (zero when absent).
  QMPoly coeff(int n) const;
  bool is_Z_free() const;
  bool is_E2_free() const;
  /// Weight with Z counted as -2; nullopt for zero or mixed weights.
  std::optional<int> weight() const;

  friend bool operator==(const ZQMPoly&, const ZQMPoly&) = default;

 private:
  Coeffs coeffs_;
  int twopi_exp_ = 0;
};

/// Sums need equal (2*pi*i) grades unless one side is zero.
ZQMPoly operator+(const ZQMPoly& a, const ZQMPoly& b);
ZQMPoly operator-(const ZQMPoly& a, const ZQMPoly& b);
ZQMPoly operator-(const ZQMPoly& a);
ZQMPoly operator*(const ZQMPoly& a, const ZQMPoly& b);
ZQMPoly operator*(const Rational& c, const ZQMPoly& a);

/// Ramanujan's derivation on coefficients plus D(Z) = 1.
ZQMPoly ramanujan_D(const ZQMPoly& p);

/// Coefficient-wise q-expansion; Z stays a formal symbol (the map key).
std::map<int, USeries> expand(const ZQMPoly& p, int q_prec);

}  // namespace qmx
