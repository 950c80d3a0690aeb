#include "qmx/ore.hpp"

#include <algorithm>

namespace qmx {

OreElement::OreElement(Parts parts, Rational k) : k_(std::move(k)) {
  for (auto& [m, a] : parts) {
    if (!(a.is_zero() && a.exact())) parts_.emplace(m, std::move(a));
  }
}

USeries OreElement::part(int m) const {
  auto it = parts_.find(m);
  return it == parts_.end() ? USeries() : it->second;
}

bool OreElement::is_zero() const {
  return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.second.is_zero(); });
}

int OreElement::prec() const {
  int p = USeries::kExact;
  for (const auto& [m, a] : parts_) p = std::min(p, a.prec());
  return p;
}

namespace {

void check_same_k(const OreElement& a, const OreElement& b) {
  if (a.parts().empty() || b.parts().empty()) return;
  if (a.k() != b.k()) throw InvariantError("combining Ore elements at different k");
}

}  // namespace

OreElement operator+(const OreElement& a, const OreElement& b) {
  check_same_k(a, b);
  OreElement::Parts p = a.parts();
  for (const auto& [m, s] : b.parts()) {
    auto it = p.find(m);
    if (it == p.end()) {
      p.emplace(m, s);
    } else {
      it->second = it->second + s;
    }
  }
  return OreElement(std::move(p), a.parts().empty() ? b.k() : a.k());
}

OreElement operator-(const OreElement& a, const OreElement& b) { return a + USeries::constant(-1) * b; }

OreElement operator*(const USeries& c, const OreElement& a) {
  OreElement::Parts p;
  for (const auto& [m, s] : a.parts()) p.emplace(m, c * s);
  return OreElement(std::move(p), a.k());
}

OreElement derive(const OreElement& a) {
  OreElement::Parts p;
  for (const auto& [m, s] : a.parts()) p.emplace(m, a.k() * frac(m, 2) * s + derive(s));
  return OreElement(std::move(p), a.k());
}

OreElement twist(const OreElement& a, int s) {
  OreElement::Parts p;
  for (const auto& [m, x] : a.parts()) p.emplace(m, shift(x, m * s));
  return OreElement(std::move(p), a.k());
}

FamilyElement::FamilyElement() : FamilyElement([](const Rational& k) { return OreElement({}, k); }) {}

FamilyElement::FamilyElement(Rule rule) : impl_(std::make_shared<Impl>()) { impl_->rule = std::move(rule); }

OreElement FamilyElement::at(const Rational& k) const {
  {
    std::lock_guard lock(impl_->mutex);
    if (auto it = impl_->cache.find(k); it != impl_->cache.end()) return it->second;
  }
  OreElement value = impl_->rule(k);
  std::lock_guard lock(impl_->mutex);
  return impl_->cache.emplace(k, std::move(value)).first->second;
}

FamilyElement FamilyElement::sigma(int s) const {
  FamilyElement self = *this;
  return FamilyElement([self, s](const Rational& k) {
    OreElement shifted = self.at(k + s);
    return OreElement(twist(shifted, s).parts(), k);
  });
}

OreOperator OreOperator::identity() { return scalar([](const Rational&) { return USeries::constant(1); }); }

OreOperator OreOperator::D() {
  return OreOperator({{[](const Rational&) { return USeries::constant(1); }, 1, 0}});
}

OreOperator OreOperator::sigma(int s) {
  return OreOperator({{[](const Rational&) { return USeries::constant(1); }, 0, s}});
}

OreOperator OreOperator::scalar(KSeries c) { return OreOperator({{std::move(c), 0, 0}}); }

OreElement OreOperator::apply_at(const FamilyElement& x, const Rational& k) const {
  OreElement sum({}, k);
  for (const auto& t : terms_) {
    OreElement y = x.at(k + t.sigma_power);
    y = OreElement(twist(y, t.sigma_power).parts(), k);
    for (int i = 0; i < t.d_power; ++i) y = derive(y);
    sum = sum + t.coeff(k) * y;
  }
  return sum;
}

FamilyElement OreOperator::apply(const FamilyElement& x) const {
  OreOperator op = *this;
  return FamilyElement([op, x](const Rational& k) { return op.apply_at(x, k); });
}

OreOperator operator+(const OreOperator& a, const OreOperator& b) {
  auto t = a.terms();
  t.insert(t.end(), b.terms().begin(), b.terms().end());
  return OreOperator(std::move(t));
}

OreOperator operator-(const OreOperator& a, const OreOperator& b) {
  auto t = a.terms();
  for (const auto& term : b.terms()) {
    KSeries c = term.coeff;
    t.push_back({[c](const Rational& k) { return USeries::constant(-1) * c(k); }, term.d_power, term.sigma_power});
  }
  return OreOperator(std::move(t));
}

OreOperator operator*(const OreOperator& a, const OreOperator& b) {
  std::vector<OreTerm> out;
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      // c1 D^a sigma^s c2 D^b sigma^t = sum_i C(a,i) c1 D^i(c2(k+s)) D^(a-i+b) sigma^(s+t)
      Integer binom = 1;
      for (int i = 0; i <= ta.d_power; ++i) {
        const Rational weight(binom);
        KSeries c1 = ta.coeff;
        KSeries c2 = tb.coeff;
        const int s = ta.sigma_power;
        out.push_back({[c1, c2, s, i, weight](const Rational& k) {
                         USeries d = c2(k + s);
                         for (int j = 0; j < i; ++j) d = derive(d);
                         return weight * (c1(k) * d);
                       },
                       ta.d_power - i + tb.d_power, ta.sigma_power + tb.sigma_power});
        binom = binom * (ta.d_power - i) / (i + 1);
      }
    }
  }
  return OreOperator(std::move(out));
}

}  // namespace qmx
