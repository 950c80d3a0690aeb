#include "qmx/dims.hpp"

#include <string>

namespace qmx {

int dim_modular(int w) {
  if (w < 0 || w % 2 != 0) return 0;
  if (w % 12 == 2) return w / 12;
  return w / 12 + 1;
}

int dim_qm(int l, int w) {
  if (l < 0) throw DomainError("depth bound must be non-negative");
  int total = 0;
  for (int i = 0; i <= l; ++i) total += dim_modular(w - 2 * i);
  return total;
}

int kappa(int l, int w) { return dim_modular((l + 1) * w) - dim_qm(l, w); }

int kappa_stable(int l) {
  const int k = kappa(l, 2 * l + 12);
  if (k < 0 || 6 * k > (3 + l) * (4 + l)) {
    throw InvariantError("kappa_" + std::to_string(l) + " = " + std::to_string(k) +
                         " violates 0 <= kappa_l <= (3+l)(4+l)/6");
  }
  return k;
}

long a_count(int n) {
  if (n < 0) return 0;
  long count = 0;
  for (int k = 0; 3 * k <= n; ++k) {
    // i + 2j = n - 3k has floor((n-3k)/2) + 1 solutions.
    count += (n - 3 * k) / 2 + 1;
  }
  return count;
}

long a_count_literal(int n) { return n <= 0 ? 0 : a_count(n); }

std::vector<QMPoly> monomial_basis(int l, int w) {
  std::vector<QMPoly> basis;
  if (w < 0 || w % 2 != 0) return basis;
  for (int i = 0; i <= l && 2 * i <= w; ++i) {
    const int rest = w - 2 * i;
    for (int j = 0; 4 * j <= rest; ++j) {
      const int r6 = rest - 4 * j;
      if (r6 % 6 == 0) basis.push_back(QMPoly::monomial({i, j, r6 / 6}));
    }
  }
  return basis;
}

DimReport dim_report(int l, int w) {
  DimReport r;
  r.w = w;
  r.l = l;
  r.d = dim_modular(w);
  r.delta = dim_qm(l, w);
  r.kappa_w = kappa(l, w);
  r.kappa_stable = kappa_stable(l);
  return r;
}

}  // namespace qmx
