#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qmx/ore.hpp"
#include "qmx/useries.hpp"

namespace qmx {

/// c_n(x) = 240 x^2 / (n (n + 2x)) * sum_{i=1..n} sigma_3(i) c_{n-i}(x), c_0 = 1.
/// Throws DomainError when n + 2x vanishes for some n in the range.
Rational c_coeff(const Rational& x, int n);
std::vector<Rational> c_sequence(const Rational& x, int count);

/// g_i = u^i sum_j c_j(i/2) q^j to q_prec coefficients (u-precision i + 2 q_prec).
USeries g_series(int i, int q_prec);

/// (1+k)(2+k) / (12 (7+6k) (11+6k)); DomainError at k = -7/6, -11/6.
Rational mu(const Rational& k);
using MuFunction = std::function<Rational(const Rational&)>;

/// Series used by the operators, all at u-precision 2 q_prec (Delta^(-1/2)
/// slightly less). Shared and cached per precision.
struct SeriesKit {
  int q_prec = 0;
  USeries E2, E4, E6, DE2;
  USeries delta;
  USeries delta_sqrt;      ///< u - 12 u^3 + ...
  USeries delta_inv_sqrt;  ///< u^-1 + 12 u + ...
};
std::shared_ptr<const SeriesKit> series_kit(int q_prec);

/// g_{i+2} = mu(i) (g_i - E6 Delta^(-1/2) g_{i+1}).
USeries contiguity_step(const USeries& g_i, const USeries& g_i1, int i, const MuFunction& mu_fn = mu);

/// g_0 .. g_n by the contiguity recursion, each accurate to q_prec
/// coefficients (starting values are taken with enough margin).
std::vector<USeries> g_series_by_contiguity(int n, int q_prec, const MuFunction& mu_fn = mu);

/// D^2(g_k) - (k^2/4) E4 g_k.
USeries ode_residual(int k, int q_prec);

/// (D^2 - (w/6) E2 D + (w(w-1)/12) D(E2)) f_{1,w}, with f_{1,w} from the
/// extremal solver. w must be a non-negative multiple of 6.
USeries kk_ode_residual(int w, int q_prec);

/// Delta^(k/2) (D^2 - (k^2/4) E4) Delta^(-k/2) X minus the operator above
/// with w = 6k, for a q-series X. Delta^(+-k/2) is Y^(+-1) (Delta/q)^(+-k/2).
USeries conjugation_residual(const USeries& X, const Rational& k, int q_prec);

/// phi_2 = Y sum c_n(k/2) q^n and phi_1 = Y^-1 sum c_n(-k/2) q^n.
FamilyElement phi2_family(int q_prec);
FamilyElement phi1_family(int q_prec);

/// The operators, with coefficients at the given q-precision.
/// E = D^2 - (k^2/4) E4; E^(s) shifts k by s.
OreOperator op_E(int q_prec, int shift = 0);
/// F = Delta^(-1/2) (E2 E4 + (5+6k) E6 + 12 E4 D) sigma.
OreOperator op_F(int q_prec);
/// G_mu = sigma^2 - mu(k) (1 - E6 Delta^(-1/2) sigma).
OreOperator op_G(int q_prec, const MuFunction& mu_fn = mu);

struct EigenReport {
  Rational k;
  Rational raw;         ///< F(phi_2) / phi_2
  Rational normalized;  ///< raw / 12
  int compared_prec = 0;
};
/// Throws InvariantError with the residual valuation if F(phi_2) is not a
/// scalar multiple of phi_2 to precision.
EigenReport eigen_check(const Rational& k, int q_prec);

/// Difference of two elements: holds when every part vanishes below the
/// common precision.
struct Comparison {
  bool equal = true;
  int compared_prec = 0;  ///< u-precision of the comparison
  std::string counterexample;
};
Comparison compare(const OreElement& a, const OreElement& b);

/// Random element: 1-3 Y-exponents in [-2, 2], coefficients low-degree
/// u-polynomials whose coefficients are quadratic in k.
FamilyElement random_family(std::mt19937_64& rng, int q_prec);

struct LaxReport {
  bool holds = true;
  int trials = 0;
  int k_samples = 0;
  int min_compared_prec = 0;  ///< u-units
  std::string counterexample;
  /// Lax 2 only: whether the identity also holds with the right side negated
  /// (the literal sign).
  std::optional<bool> literal_sign_holds;
  std::optional<bool> holds_mu_one;
};

/// F E - E F = 4 Delta^(-1/2) (E2 E4 + 2 E6) sigma E on random elements.
LaxReport lax_check_1(const std::vector<Rational>& ks, int q_prec, int trials, std::uint64_t seed = 1);
/// E^(2) G_mu - G_mu E = -mu E4 (F/12 - (k+1)), for mu = mu(k) and mu = 1.
LaxReport lax_check_2(const std::vector<Rational>& ks, int q_prec, int trials, std::uint64_t seed = 2,
                      const MuFunction& mu_fn = mu);

/// G_mu(phi_2) at k.
OreElement g_mu_phi2(const Rational& k, const Rational& mu_value, int q_prec);

/// Primes dividing some coefficient denominator.
std::vector<Integer> denominator_primes(const USeries& s);

/// f_{1,6k} = Delta^(k/2) g_k to q_prec coefficients.
USeries f_1_6k(int k, int q_prec);

/// A few non-integral rational k values clear of every pole.
std::vector<Rational> default_k_samples();

}  // namespace qmx
