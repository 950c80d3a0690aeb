#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qmx/useries.hpp"

namespace qmx {

/// 393120 = 2^5 3^3 5 7 13, twice the number of norm-2 vectors.
inline const Integer kLeechA = 393120;

/// 1 + (65520/691) sum sigma_11(n) q^n.
USeries e12(int q_prec);

/// E12 - (65520/691) Delta. Throws InvariantError unless every coefficient is
/// a non-negative integer.
USeries theta_leech(int q_prec);

/// D(theta)/393120, checked coefficient-for-coefficient against the extremal
/// solver's f_{1,14} (InvariantError on mismatch).
USeries f_1_14(int q_prec);

struct ThetaReport {
  int prec = 0;                                 ///< q-coefficients computed
  std::vector<std::pair<int, Integer>> shells;  ///< (a, |L_a|)
  bool divisibility_ok = true;                  ///< 393120 | a |L_a|
  bool f114_integral = true;
  bool f114_nonnegative = true;
  // Finer factor checks, observed shell by shell.
  bool div_5_7_13 = true;  ///< 5*7*13 | |L_a|
  bool div_9 = true;       ///< 9 | |L_a|
  bool div_27 = true;      ///< 27 | a |L_a|
  bool div_32 = true;      ///< 32 | a |L_a|
  std::vector<std::string> failures;
};

/// Checks shells 1 <= a <= a_max.
ThetaReport divisibility_scan(int a_max);

}  // namespace qmx
