#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "qmx/useries.hpp"

namespace qmx {

/// Finite sum of Y^m * a_m with a_m in Q((u)), at a fixed numeric value of
/// the parameter k. D(Y) = (k/2) Y.
class OreElement {
 public:
  using Parts = std::map<int, USeries>;

  OreElement() = default;
  OreElement(Parts parts, Rational k);

  const Parts& parts() const noexcept { return parts_; }
  const Rational& k() const noexcept { return k_; }
  USeries part(int m) const;
  bool is_zero() const;
  /// Smallest precision over the parts; kExact for an empty element.
  int prec() const;

  friend bool operator==(const OreElement&, const OreElement&) = default;

 private:
  Parts parts_;
  Rational k_;
};

/// Parts are matched by Y-exponent; both sides must share k.
OreElement operator+(const OreElement& a, const OreElement& b);
OreElement operator-(const OreElement& a, const OreElement& b);
OreElement operator*(const USeries& c, const OreElement& a);

/// D(Y^m a) = Y^m ((m k / 2) a + D a).
OreElement derive(const OreElement& a);
/// Y^m a -> Y^m u^(m s) a, keeping k (the parameter shift is done by the caller).
OreElement twist(const OreElement& a, int s);

/// An element of L depending on k: a rule k -> OreElement, memoized per k.
class FamilyElement {
 public:
  using Rule = std::function<OreElement(const Rational& k)>;

  FamilyElement();
  explicit FamilyElement(Rule rule);

  OreElement at(const Rational& k) const;

  /// sigma^s: (sigma^s x)(k) = twist(x(k + s), s).
  FamilyElement sigma(int s = 1) const;

 private:
  struct Impl {
    Rule rule;
    std::mutex mutex;
    std::map<Rational, OreElement> cache;
  };
  std::shared_ptr<Impl> impl_;
};

/// Coefficient in Q(k)((u)), evaluated at a numeric k.
using KSeries = std::function<USeries(const Rational& k)>;

struct OreTerm {
  KSeries coeff;
  int d_power = 0;
  int sigma_power = 0;
};

/// Finite sum of terms c(k) D^d sigma^s acting on FamilyElements.
class OreOperator {
 public:
  OreOperator() = default;
  explicit OreOperator(std::vector<OreTerm> terms) : terms_(std::move(terms)) {}

  static OreOperator identity();
  static OreOperator D();
  static OreOperator sigma(int s = 1);
  /// Multiplication by c(k).
  static OreOperator scalar(KSeries c);

  const std::vector<OreTerm>& terms() const noexcept { return terms_; }

  OreElement apply_at(const FamilyElement& x, const Rational& k) const;
  FamilyElement apply(const FamilyElement& x) const;

 private:
  std::vector<OreTerm> terms_;
};

OreOperator operator+(const OreOperator& a, const OreOperator& b);
OreOperator operator-(const OreOperator& a, const OreOperator& b);
/// Composition a o b, normalized with D sigma = sigma D,
/// D c = c D + D(c) and sigma c = sigma(c) sigma.
OreOperator operator*(const OreOperator& a, const OreOperator& b);

}  // namespace qmx
