#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qmx {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested answer is not determined by the available precision.
/// Distinct from a failed check: more terms would settle it.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Input outside an operation's domain (pole, non-invertible series, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// n/d in canonical form (mpq_class(n, d) alone does not reduce).
inline Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// "num/den", den omitted when 1.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

/// Accepts "n", "-n", "n/d". Throws DomainError on malformed text or d == 0.
Rational parse_rational(std::string_view text);

/// Distinct prime factors of |n| in increasing order (n != 0).
std::vector<Integer> prime_factors(const Integer& n);

/// Exact square root of a non-negative rational if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& r);

}  // namespace qmx
