#include "qmx/useries.hpp"

#include <algorithm>
#include <string>

namespace qmx {

namespace {

int floor_div(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Integer lcm_of_denominators(const std::map<int, Rational>& terms) {
  Integer l = 1;
  for (const auto& [e, c] : terms) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  return l;
}

// Integer numerators after scaling by `scale` (a multiple of every denominator).
std::vector<std::pair<int, Integer>> scaled_numerators(const std::map<int, Rational>& terms,
                                                       const Integer& scale) {
  std::vector<std::pair<int, Integer>> out;
  out.reserve(terms.size());
  for (const auto& [e, c] : terms) {
    out.emplace_back(e, Integer(c.get_num() * (scale / c.get_den())));
  }
  return out;
}

// Leading exponent of a series for precision bookkeeping: a series that is
// zero to precision p is O(u^p).
int effective_valuation(const USeries& a) {
  auto v = a.valuation();
  return v ? *v : a.prec();
}

}  // namespace

int prec_add(int a, int b) {
  if (a == USeries::kExact || b == USeries::kExact) return USeries::kExact;
  return a + b;
}

USeries::USeries(std::map<int, Rational> terms, int prec) : prec_(prec) {
  for (auto& [e, c] : terms) {
    if (e < prec && c != 0) terms_.emplace(e, std::move(c));
  }
}

USeries USeries::zero(int prec) { return USeries({}, prec); }

USeries USeries::constant(const Rational& c, int prec) { return USeries({{0, c}}, prec); }

USeries USeries::monomial(const Rational& c, int u_exp, int prec) {
  return USeries({{u_exp, c}}, prec);
}

USeries USeries::from_q_coefficients(std::span<const Rational> coeffs) {
  std::map<int, Rational> terms;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (coeffs[n] != 0) terms.emplace(static_cast<int>(2 * n), coeffs[n]);
  }
  return USeries(std::move(terms), static_cast<int>(2 * coeffs.size()));
}

Rational USeries::coeff(int u_exp) const {
  if (u_exp >= prec_) {
    throw PrecisionError("coefficient of u^" + std::to_string(u_exp) +
                         " requested beyond precision O(u^" + std::to_string(prec_) + ")");
  }
  auto it = terms_.find(u_exp);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> USeries::valuation() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.begin()->first;
}

std::optional<int> USeries::q_valuation() const {
  auto v = valuation();
  if (!v) return std::nullopt;
  return floor_div(*v, 2);
}

int USeries::q_prec() const {
  if (exact()) return kExact;
  return floor_div(prec_ + 1, 2);
}

USeries USeries::truncated(int new_prec) const {
  if (new_prec >= prec_) return *this;
  USeries out;
  out.prec_ = new_prec;
  for (const auto& [e, c] : terms_) {
    if (e >= new_prec) break;
    out.terms_.emplace(e, c);
  }
  return out;
}

USeries operator+(const USeries& a, const USeries& b) {
  std::map<int, Rational> terms = a.terms();
  for (const auto& [e, c] : b.terms()) terms[e] += c;
  return USeries(std::move(terms), std::min(a.prec(), b.prec()));
}

USeries operator-(const USeries& a) {
  std::map<int, Rational> terms = a.terms();
  for (auto& [e, c] : terms) c = -c;
  return USeries(std::move(terms), a.prec());
}

USeries operator-(const USeries& a, const USeries& b) { return a + (-b); }

USeries operator*(const Rational& c, const USeries& a) {
  if (c == 0) return USeries::zero(a.prec());
  std::map<int, Rational> terms = a.terms();
  for (auto& [e, x] : terms) x *= c;
  return USeries(std::move(terms), a.prec());
}

USeries operator*(const USeries& a, const USeries& b) {
  if ((a.is_zero() && a.exact()) || (b.is_zero() && b.exact())) return USeries();
  const int va = effective_valuation(a);
  const int vb = effective_valuation(b);
  const int prec = std::min(prec_add(a.prec(), vb), prec_add(b.prec(), va));
  if (a.is_zero() || b.is_zero()) return USeries::zero(prec);

  const int lo = va + vb;
  int hi = a.terms().rbegin()->first + b.terms().rbegin()->first;
  if (prec != USeries::kExact) hi = std::min(hi, prec - 1);
  if (hi < lo) return USeries::zero(prec);

  // Convolve integer numerators over a common denominator; this keeps the
  // inner loop on mpz multiply-accumulate instead of rational additions.
  const Integer la = lcm_of_denominators(a.terms());
  const Integer lb = lcm_of_denominators(b.terms());
  const auto an = scaled_numerators(a.terms(), la);
  const auto bn = scaled_numerators(b.terms(), lb);

  std::vector<Integer> acc(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [ea, ca] : an) {
    if (ea + vb > hi) break;
    for (const auto& [eb, cb] : bn) {
      const int e = ea + eb;
      if (e > hi) break;
      mpz_addmul(acc[e - lo].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    }
  }
  const Integer denom = la * lb;
  std::map<int, Rational> terms;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] == 0) continue;
    Rational r(acc[i], denom);
    r.canonicalize();
    terms.emplace(lo + static_cast<int>(i), std::move(r));
  }
  return USeries(std::move(terms), prec);
}

USeries shift(const USeries& a, int m) {
  std::map<int, Rational> terms;
  for (const auto& [e, c] : a.terms()) terms.emplace(e + m, c);
  return USeries(std::move(terms), prec_add(a.prec(), m));
}

USeries pow(const USeries& a, unsigned n) {
  USeries result = USeries::constant(1);
  USeries base = a;
  while (n > 0) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return result;
}

namespace {

// Dense relative coefficients t[i] = a_{v+i} / a_v for i < count.
std::vector<Rational> normalized_tail(const USeries& a, int v, int count) {
  std::vector<Rational> t(static_cast<std::size_t>(std::max(count, 0)));
  const Rational lead = a.terms().begin()->second;
  for (const auto& [e, c] : a.terms()) {
    const int i = e - v;
    if (i >= count) break;
    t[static_cast<std::size_t>(i)] = c / lead;
  }
  return t;
}

}  // namespace

USeries invert(const USeries& a, int max_prec) {
  if (a.is_zero()) throw DomainError("non-invertible: series is zero to its precision");
  const int v = *a.valuation();
  const Rational lead = a.terms().begin()->second;
  if (a.exact() && a.terms().size() == 1) {
    return USeries::monomial(1 / lead, -v, max_prec);
  }
  int prec = a.exact() ? USeries::kExact : a.prec() - 2 * v;
  prec = std::min(prec, max_prec);
  if (prec == USeries::kExact) {
    throw DomainError("inverse of an exact non-monomial series needs a precision cap");
  }
  const int count = prec + v;  // relative terms b_0 .. b_{count-1}
  if (count <= 0) return USeries::zero(prec);
  const auto t = normalized_tail(a, v, count);
  std::vector<int> support;
  for (int i = 1; i < count; ++i) {
    if (t[static_cast<std::size_t>(i)] != 0) support.push_back(i);
  }
  std::vector<Rational> b(static_cast<std::size_t>(count));
  b[0] = 1;
  for (int n = 1; n < count; ++n) {
    Rational s;
    for (int i : support) {
      if (i > n) break;
      s += t[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
    }
    b[static_cast<std::size_t>(n)] = -s;
  }
  std::map<int, Rational> terms;
  const Rational inv_lead = 1 / lead;
  for (int n = 0; n < count; ++n) {
    if (b[static_cast<std::size_t>(n)] != 0) {
      terms.emplace(n - v, b[static_cast<std::size_t>(n)] * inv_lead);
    }
  }
  return USeries(std::move(terms), prec);
}

USeries sqrt_normalized(const USeries& a, int max_prec) {
  if (a.is_zero()) throw DomainError("square root of a series that is zero to its precision");
  const int v = *a.valuation();
  if (v % 2 != 0) {
    throw DomainError("square root needs an even leading u-exponent, got u^" + std::to_string(v));
  }
  const Rational lead = a.terms().begin()->second;
  auto root = rational_sqrt(lead);
  if (!root) throw DomainError("leading coefficient " + to_string(lead) + " is not a rational square");
  if (a.exact() && a.terms().size() == 1) return USeries::monomial(*root, v / 2, max_prec);

  int prec = a.exact() ? USeries::kExact : a.prec() - v / 2;
  prec = std::min(prec, max_prec);
  if (prec == USeries::kExact) {
    throw DomainError("square root of an exact non-monomial series needs a precision cap");
  }
  const int count = prec - v / 2;
  if (count <= 0) return USeries::zero(prec);
  const auto t = normalized_tail(a, v, count);
  std::vector<Rational> b(static_cast<std::size_t>(count));
  b[0] = 1;
  for (int n = 1; n < count; ++n) {
    Rational s = t[static_cast<std::size_t>(n)];
    for (int i = 1; i < n; ++i) {
      s -= b[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(n - i)];
    }
    b[static_cast<std::size_t>(n)] = s / 2;
  }
  std::map<int, Rational> terms;
  for (int n = 0; n < count; ++n) {
    if (b[static_cast<std::size_t>(n)] != 0) {
      terms.emplace(n + v / 2, b[static_cast<std::size_t>(n)] * *root);
    }
  }
  return USeries(std::move(terms), prec);
}

USeries pow_unit(const USeries& a, const Rational& alpha, int max_prec) {
  if (a.valuation() != 0 || a.terms().begin()->second != 1) {
    throw DomainError("pow_unit needs a series with constant term 1");
  }
  const int prec = std::min(a.prec(), max_prec);
  if (prec == USeries::kExact) throw DomainError("pow_unit of an exact series needs a precision cap");
  const auto t = normalized_tail(a, 0, prec);
  std::vector<int> support;
  for (int i = 1; i < prec; ++i) {
    if (t[static_cast<std::size_t>(i)] != 0) support.push_back(i);
  }
  // n b_n = sum_{i>=1} a_i (alpha i - (n - i)) b_{n-i}
  std::vector<Rational> b(static_cast<std::size_t>(std::max(prec, 0)));
  if (prec > 0) b[0] = 1;
  for (int n = 1; n < prec; ++n) {
    Rational s;
    for (int i : support) {
      if (i > n) break;
      s += t[static_cast<std::size_t>(i)] * (alpha * i - (n - i)) * b[static_cast<std::size_t>(n - i)];
    }
    b[static_cast<std::size_t>(n)] = s / n;
  }
  std::map<int, Rational> terms;
  for (int n = 0; n < prec; ++n) {
    if (b[static_cast<std::size_t>(n)] != 0) terms.emplace(n, b[static_cast<std::size_t>(n)]);
  }
  return USeries(std::move(terms), prec);
}

USeries derive(const USeries& a) {
  std::map<int, Rational> terms;
  for (const auto& [e, c] : a.terms()) terms.emplace(e, c * frac(e, 2));
  return USeries(std::move(terms), a.prec());
}

bool agree_below(const USeries& a, const USeries& b, int upto) {
  if (a.prec() < upto || b.prec() < upto) {
    throw PrecisionError("cannot compare series below u^" + std::to_string(upto) +
                         ": precisions are " + std::to_string(a.prec()) + " and " +
                         std::to_string(b.prec()));
  }
  return a.truncated(upto).terms() == b.truncated(upto).terms();
}

Integer sigma_k(unsigned k, long n) {
  if (n <= 0) throw DomainError("sigma_k needs n >= 1, got " + std::to_string(n));
  Integer total = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), k);
    total += p;
    const long e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(e), k);
      total += p;
    }
  }
  return total;
}

}  // namespace qmx
