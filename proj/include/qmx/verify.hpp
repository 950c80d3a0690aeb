#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmx/rational.hpp"

namespace qmx {

/// One cell of an integrality scan. Integrality and positivity are observed
/// up to the scan precision only.
struct ScanRow {
  int l = 0;
  int w = 0;
  int nu = 0;
  int delta = 0;
  bool integral = false;
  bool positive = false;  ///< every coefficient from q^nu on is > 0
  std::optional<Integer> max_denominator_prime;
  int prec_used = 0;
  bool skipped = false;  ///< w - 2l = 2, or an empty space
  std::string note;
};

/// All cells 0 <= l <= l_max, 2l <= w <= w_max, w even, in (l, w) order.
std::vector<ScanRow> scan_integrality(int l_max, int w_max, int prec, unsigned threads);

struct Conjecture1Report {
  int l_max = 0;
  int w_max = 0;
  int prec = 0;
  std::vector<ScanRow> rows;
  std::vector<std::string> violations;  ///< empty when nothing was observed
};

/// Denominator primes < w and positive coefficients (f_{1,2} = E2 exempt
/// from positivity) for 1 <= l <= l_max <= 4.
Conjecture1Report conjecture1_scan(int l_max, int w_max, int prec, unsigned threads);

/// Ranges and precisions of the verification suite.
struct Profile {
  std::string name = "full";
  int eisenstein_n = 200;
  int kappa_w_max = 200;
  int extremal_w_max = 120;       ///< l = 0..4
  int extremal_bound_w_max = 60;  ///< l = 5..8
  int wronskian_trials = 30;
  int ode_prec = 40;
  int ode_k_max = 12;
  int kk_w_max = 72;
  int contiguity_i_max = 20;
  int contiguity_prec = 60;
  std::vector<Rational> k_samples;
  int lax_trials = 20;
  int lax_prec = 30;
  int denominators_k_max = 20;
  int denominators_prec = 60;
  int leech_a_max = 400;
  int diagonal_w_max = 60;
  int scan_l_max = 6;
  int scan_w_max = 60;
  int scan_prec = 60;
  unsigned threads = 0;  ///< 0: hardware concurrency
  std::optional<Rational> mu_tamper;  ///< added to mu(k) for fault injection
};

/// "full" (the acceptance ranges) or "quick".
Profile profile_by_name(const std::string& name);

/// Applies key = value lines ('#' starts a comment). Unknown keys and bad
/// values throw DomainError.
void apply_config(Profile& p, std::istream& in);
void apply_config_value(Profile& p, const std::string& key, const std::string& value);

enum class CheckStatus { Pass, Fail, Precision };

struct CheckResult {
  int id = 0;
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string detail;
  double seconds = 0;
};

struct VerifyReport {
  std::string profile;
  std::vector<CheckResult> checks;
  /// 0 all pass, 1 any failure, 2 precision exhausted without failures.
  int exit_code() const;
};

VerifyReport verify_all(const Profile& p);

std::string to_string(CheckStatus s);

}  // namespace qmx
