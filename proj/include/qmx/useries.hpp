#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "qmx/rational.hpp"

namespace qmx {

// Truncated formal Laurent series in u, where u^2 = q.
//
// Exponents are stored in u-units; a q-series is a u-series supported on
// even exponents. `prec` is an exclusive bound: every coefficient with
// u-exponent < prec is known exactly, nothing at or above it is known.
// Exact (finite) series carry prec == kExact.
//
// Normal form: no zero coefficients, no exponents >= prec.
class USeries {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max();

  /// Exact zero.
  USeries() = default;
  /// Builds and normalizes; entries at or above `prec` are dropped.
  USeries(std::map<int, Rational> terms, int prec);

  /// Zero known to O(u^prec).
  static USeries zero(int prec = kExact);
  static USeries constant(const Rational& c, int prec = kExact);
  static USeries monomial(const Rational& c, int u_exp, int prec = kExact);
  /// sum_{n < coeffs.size()} coeffs[n] q^n + O(q^size).
  static USeries from_q_coefficients(std::span<const Rational> coeffs);

  const std::map<int, Rational>& terms() const noexcept { return terms_; }
  int prec() const noexcept { return prec_; }
  bool exact() const noexcept { return prec_ == kExact; }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Coefficient of u^u_exp. Throws PrecisionError when u_exp >= prec.
  Rational coeff(int u_exp) const;
  /// Coefficient of q^n, i.e. of u^(2n).
  Rational q_coeff(int n) const { return coeff(2 * n); }

  /// Least stored u-exponent; nullopt when the series is zero to its precision.
  std::optional<int> valuation() const;
  /// valuation() in q-units; only meaningful for q-series (even support).
  std::optional<int> q_valuation() const;
  /// Number of known q-coefficients for a q-series (prec/2 rounded up).
  int q_prec() const;

  /// Drops everything at or above min(prec, new_prec).
  USeries truncated(int new_prec) const;

  /// Same terms, same precision.
  friend bool operator==(const USeries& a, const USeries& b) = default;

 private:
  std::map<int, Rational> terms_;
  int prec_ = kExact;
};

/// Saturating helpers for precision arithmetic around kExact.
int prec_add(int a, int b);

USeries operator+(const USeries& a, const USeries& b);
USeries operator-(const USeries& a, const USeries& b);
USeries operator-(const USeries& a);
USeries operator*(const USeries& a, const USeries& b);
USeries operator*(const Rational& c, const USeries& a);

/// Multiplies by u^m.
USeries shift(const USeries& a, int m);
USeries pow(const USeries& a, unsigned n);

/// Multiplicative inverse. The result precision is a.prec - 2*val(a), capped
/// by `max_prec`; exact input therefore needs a finite cap.
USeries invert(const USeries& a, int max_prec = USeries::kExact);

/// The square root whose leading coefficient is positive. Requires an even
/// leading u-exponent and a leading coefficient that is a rational square.
USeries sqrt_normalized(const USeries& a, int max_prec = USeries::kExact);

/// a^alpha for a series with constant term 1, via a * D(b) = alpha * D(a) * b.
/// Exact input needs a finite cap.
USeries pow_unit(const USeries& a, const Rational& alpha, int max_prec = USeries::kExact);

/// D = q d/dq, so D(u^m) = (m/2) u^m.
USeries derive(const USeries& a);

/// True when a and b agree on every exponent below `upto` (both must know it).
bool agree_below(const USeries& a, const USeries& b, int upto);

/// sigma_k(n) = sum of d^k over positive divisors d of n.
Integer sigma_k(unsigned k, long n);

}  // namespace qmx
