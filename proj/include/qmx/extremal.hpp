#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "qmx/dims.hpp"
#include "qmx/qmpoly.hpp"

namespace qmx {

/// The normalized analytically extremal form f_{l,w} of M~_w^{<=l}.
struct ExtremalResult {
  int l = 0;
  int w = 0;
  QMPoly form_poly;
  USeries expansion;           ///< q-expansion, leading coefficient 1
  int nu = 0;                  ///< vanishing order, nu_max(l, w)
  int delta = 0;               ///< delta_l(w)
  int kappa = 0;               ///< kappa_l (stable defect)
  int depth_actual = 0;
  bool algebraically_extremal = false;  ///< nu == delta - 1 and depth == l
  bool depth_l_impossible = false;      ///< w - 2l == 2: no form has depth exactly l
  std::vector<int> pivot_columns;       ///< echelon certificate, one per basis element
  int q_prec = 0;                       ///< q-coefficients used by the solve
};

/// 0 <= 2l <= w, w even, w - 2l != 2.
bool valid_cell(int l, int w);

/// Basis of M~_w^{<=l} adapted to vanishing order: E2^i Delta^c E4^a E6^b with
/// a <= 2, b <= 1, ordered by (i, c). Spans the same space as
/// monomial_basis(l, w) but keeps the elimination nearly triangular.
std::vector<QMPoly> adapted_basis(int l, int w);

/// Raised when the leading delta x delta coefficient matrix is singular.
class SingularBasisError : public Error {
 public:
  SingularBasisError(const std::string& what, std::vector<Rational> kernel, QMPoly kernel_form)
      : Error(what), kernel_(std::move(kernel)), kernel_form_(std::move(kernel_form)) {}
  /// Coefficients on adapted_basis(l, w) of a form vanishing to order >= delta.
  const std::vector<Rational>& kernel() const noexcept { return kernel_; }
  const QMPoly& kernel_form() const noexcept { return kernel_form_; }

 private:
  std::vector<Rational> kernel_;
  QMPoly kernel_form_;
};

/// Exact solver at a fixed q-precision. Basis expansions are memoized, so one
/// solver can serve a whole scan. Thread-safe.
class ExtremalSolver {
 public:
  explicit ExtremalSolver(int q_prec);

  int q_prec() const noexcept { return q_prec_; }

  /// Throws PrecisionError when q_prec does not resolve every pivot,
  /// DomainError for an empty space, InvariantError if nu leaves
  /// [delta - 1, delta - 1 + kappa_l].
  ExtremalResult solve(int l, int w);

  /// (g_0, ..., g_{delta-1}) with g_i = q^i + O(q^delta).
  std::vector<QMPoly> diagonal_basis(int l, int w);

  USeries expand(const QMPoly& f) { return expander_.expand(f); }

 private:
  struct Row {
    QMPoly poly;
    USeries series;
  };
  std::vector<Row> basis_rows(int l, int w);
  USeries delta_power(int c);

  int q_prec_;
  Expander expander_;
  std::mutex mutex_;
  std::vector<USeries> delta_powers_;
};

struct ExtremalOptions {
  std::optional<int> q_prec;  ///< fixed precision; no escalation when set
  int buffer = 8;
  int prec_cap = 2048;
};

/// Starts at delta + kappa_l + buffer q-coefficients and doubles on
/// PrecisionError up to prec_cap (unless a fixed q_prec is given).
ExtremalResult numax_and_form(int l, int w, const ExtremalOptions& opts = {});

/// nu(f) == delta_{depth f}(weight f) - 1. f must be nonzero and homogeneous.
bool is_algebraically_extremal(const QMPoly& f);

std::vector<QMPoly> diagonal_basis(int l, int w, const ExtremalOptions& opts = {});

struct FlagReport {
  int w = 0;
  std::vector<std::pair<int, int>> nu_by_depth;  ///< (l, nu_max(l, w))
  bool strictly_increasing = false;
};

/// nu_max(l, w) along l = 0..w/2, skipping l = w/2 - 1.
FlagReport flag_monotonicity_check(int w, const ExtremalOptions& opts = {});

}  // namespace qmx
