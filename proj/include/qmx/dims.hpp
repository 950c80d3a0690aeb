#pragma once

#include <vector>

#include "qmx/qmpoly.hpp"

namespace qmx {

/// d(w) = dim M_w for level one (0 for odd or negative w).
int dim_modular(int w);

/// delta_l(w) = sum_{i=0..l} d(w - 2i), the dimension of depth <= l forms.
int dim_qm(int l, int w);

/// kappa_l(w) = d((l+1)w) - delta_l(w).
int kappa(int l, int w);

/// The stable value kappa_l(w) for w >= 2l + 12. Checks the bound
/// 0 <= kappa_l <= (3+l)(4+l)/6 and throws InvariantError if it fails.
int kappa_stable(int l);

/// #{(i,j,k) in N^3 : i + 2j + 3k = n}; zero for n < 0 and one for n = 0.
long a_count(int n);

/// The same count with the literal convention a(n) = 0 for every n <= 0.
long a_count_literal(int n);

/// Every E2^i E4^j E6^k of weight w with i <= l, in lexicographic (i,j,k)
/// order. Its length equals dim_qm(l, w).
std::vector<QMPoly> monomial_basis(int l, int w);

struct DimReport {
  int w = 0;
  int l = 0;
  int d = 0;
  int delta = 0;
  int kappa_w = 0;
  int kappa_stable = 0;
};

DimReport dim_report(int l, int w);

}  // namespace qmx
