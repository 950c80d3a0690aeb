#include "qmx/rational.hpp"

#include <algorithm>
#include <string>

namespace qmx {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    if (s.empty()) throw DomainError("malformed rational: '" + std::string(text) + "'");
    std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (start == s.size()) throw DomainError("malformed rational: '" + std::string(text) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw DomainError("malformed rational: '" + std::string(text) + "'");
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return Integer(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  Integer num = parse_int(text.substr(0, slash));
  Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(Integer(x - y));
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) > 0) {
    out.push_back(n);
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(Integer(n / d), out);
}

}  // namespace

std::vector<Integer> prime_factors(const Integer& n) {
  std::vector<Integer> out;
  Integer m = abs(n);
  if (m == 0) throw DomainError("prime_factors of zero");
  for (unsigned long p = 2; p < 10000 && Integer(p) * p <= m; ++p) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.push_back(Integer(p));
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= p;
    }
  }
  std::vector<Integer> rest;
  factor_into(m, rest);
  out.insert(out.end(), rest.begin(), rest.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) {
    return std::nullopt;
  }
  Integer n = sqrt(r.get_num());
  Integer d = sqrt(r.get_den());
  return Rational(n, d);
}

}  // namespace qmx
