#include "chiral/element.hpp"

namespace chiral {

Scalar Element::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Element& Element::operator+=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Element Element::operator-() const {
  Element r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Element operator*(const Scalar& s, const Element& e) {
  if (s.is_zero()) return {};
  Element r;
  for (const auto& [m, c] : e.terms_) r.add(m, s * c);
  return r;
}

const Element& LambdaPoly::coeff(int j) const {
  static const Element zero;
  if (j < 0 || j >= static_cast<int>(c_.size())) return zero;
  return c_[j];
}

Element LambdaPoly::product(int j) const { return Scalar(factorial(j)) * coeff(j); }

void LambdaPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void LambdaPoly::add(int j, const Element& e) {
  if (e.is_zero()) return;
  if (j >= static_cast<int>(c_.size())) c_.resize(j + 1);
  c_[j] += e;
  trim();
}

LambdaPoly& LambdaPoly::operator+=(const LambdaPoly& o) {
  for (size_t j = 0; j < o.c_.size(); ++j) add(static_cast<int>(j), o.c_[j]);
  return *this;
}

LambdaPoly& LambdaPoly::operator-=(const LambdaPoly& o) {
  for (size_t j = 0; j < o.c_.size(); ++j) add(static_cast<int>(j), -o.c_[j]);
  return *this;
}

LambdaPoly LambdaPoly::operator-() const {
  LambdaPoly r = *this;
  for (auto& e : r.c_) e = -e;
  return r;
}

LambdaPoly operator*(const Scalar& s, const LambdaPoly& p) {
  LambdaPoly r;
  for (size_t j = 0; j < p.c_.size(); ++j) r.add(static_cast<int>(j), s * p.c_[j]);
  return r;
}

LambdaPoly LambdaPoly::times_lambda_power(int n, const Scalar& c) const {
  if (n == 0 && c == Scalar(1)) return *this;
  Scalar f(1);
  for (int i = 0; i < n; ++i) f = f * c;
  LambdaPoly r;
  for (size_t j = 0; j < c_.size(); ++j) r.add(static_cast<int>(j) + n, f * c_[j]);
  return r;
}

BigRational factorial(int n) {
  mpz_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return BigRational(r);
}

BigRational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return BigRational(r);
}

BigRational gbinomial(long m, int i) {
  BigRational r = 1;
  for (int t = 0; t < i; ++t) {
    r *= BigRational(m - t);
    r /= BigRational(t + 1);
  }
  return r;
}

}  // namespace chiral
