#pragma once

#include <vector>

#include "qmx/extremal.hpp"
#include "qmx/zqmpoly.hpp"

namespace qmx {

/// f_r = (12^r / r!) (d/dE2)^r f for r = 0..l. f must be weight-homogeneous
/// of depth <= l.
std::vector<QMPoly> pf_coefficients(const QMPoly& f, int l);

/// Components j = 0..l of F_f: sum_r f_r (l-r)!/(l-r-j)! Z^(l-r-j), each with
/// (2 pi i)-exponent j - l.
std::vector<ZQMPoly> f_vector(const QMPoly& f, int l);

/// det(F, D F, ..., D^l F). The result is checked to be Z-free, E2-free,
/// nonzero and of weight (l+1)w with (2 pi i)-exponent -l(l+1)/2; a failed
/// check throws InvariantError.
ZQMPoly wronskian(const QMPoly& f, int l);

/// Vanishing order of a nonzero modular form (E2-free, homogeneous) from
/// its first d(weight) coefficients, which always suffice.
int modular_valuation(const QMPoly& g);

struct MultiplicityReport {
  int l = 0;
  int w = 0;
  int delta = 0;
  int kappa = 0;
  int nu_f = 0;          ///< nu_max(l, w)
  int nu_W = 0;          ///< nu(W(F_f))
  int d_bound = 0;       ///< d((l+1)w) - 1
  QMPoly W;
  bool chain_holds = false;  ///< nu_f <= nu_W <= d_bound and nu_f <= delta - 1 + kappa
};

MultiplicityReport multiplicity_certificate(int l, int w, const ExtremalOptions& opts = {});

}  // namespace qmx
