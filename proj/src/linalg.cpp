#include "qmx/linalg.hpp"

#include <algorithm>

namespace qmx::linalg {

namespace {

void make_primitive(EchelonRow& r) {
  Integer g = 0;
  for (const auto& x : r.entries) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  for (const auto& x : r.combination) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (g == 0) return;
  for (auto& x : r.entries) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  for (auto& x : r.combination) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// target <- a*target - b*source on columns >= from, where a = p/g, b = t/g.
void eliminate(EchelonRow& target, const EchelonRow& source, std::size_t col, std::size_t from) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), source.entries[col].get_mpz_t(), target.entries[col].get_mpz_t());
  const Integer a = source.entries[col] / g;
  const Integer b = target.entries[col] / g;
  for (std::size_t j = from; j < target.entries.size(); ++j) {
    target.entries[j] *= a;
    mpz_submul(target.entries[j].get_mpz_t(), b.get_mpz_t(), source.entries[j].get_mpz_t());
  }
  for (std::size_t j = 0; j < target.combination.size(); ++j) {
    target.combination[j] *= a;
    mpz_submul(target.combination[j].get_mpz_t(), b.get_mpz_t(),
               source.combination[j].get_mpz_t());
  }
  make_primitive(target);
}

}  // namespace

Echelon echelon(const std::vector<IntRow>& rows) {
  Echelon out;
  const std::size_t n = rows.size();
  out.columns = rows.empty() ? 0 : rows.front().size();
  std::vector<EchelonRow> active;
  active.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    EchelonRow r;
    r.entries = rows[i];
    r.combination.assign(n, Integer(0));
    r.combination[i] = 1;
    make_primitive(r);
    active.push_back(std::move(r));
  }
  for (std::size_t col = 0; col < out.columns && !active.empty(); ++col) {
    auto it = std::find_if(active.begin(), active.end(),
                           [col](const EchelonRow& r) { return r.entries[col] != 0; });
    if (it == active.end()) continue;
    EchelonRow pivot = std::move(*it);
    active.erase(it);
    pivot.pivot = static_cast<int>(col);
    for (auto& r : active) {
      if (r.entries[col] != 0) eliminate(r, pivot, col, col);
    }
    out.rows.push_back(std::move(pivot));
  }
  out.null_rows = std::move(active);
  return out;
}

void back_substitute(Echelon& e) {
  for (std::size_t k = e.rows.size(); k-- > 0;) {
    const auto col = static_cast<std::size_t>(e.rows[k].pivot);
    for (std::size_t i = 0; i < k; ++i) {
      if (e.rows[i].entries[col] != 0) {
        eliminate(e.rows[i], e.rows[k], col, static_cast<std::size_t>(e.rows[i].pivot));
      }
    }
  }
}

IntRow to_primitive_integer_row(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& x : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  Integer g = 0;
  for (const auto& x : row) {
    out.emplace_back(x.get_num() * (l / x.get_den()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
  }
  if (g > 1) {
    for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  }
  return out;
}

}  // namespace qmx::linalg
