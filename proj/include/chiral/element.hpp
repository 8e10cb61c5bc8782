#pragma once

// Canonical PBW monomials and elements of a strongly generated vertex
// algebra. A monomial is the right-nested normally ordered product
//   :(D^{d1} g1) :(D^{d2} g2) ... :(D^{dn} gn) e^m:...::
// where D is the translation operator (no factorials) and e^m is the lattice
// exponential (m = 0 is the vacuum). Factors are ordered by ascending
// generator index, then descending D-power.

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "chiral/scalars.hpp"

namespace chiral {

struct Factor {
  int gen = 0;
  int d = 0;

  friend bool operator==(const Factor&, const Factor&) = default;
  /// PBW order: ascending generator, then descending D-power.
  friend std::strong_ordering operator<=>(const Factor& a, const Factor& b) {
    if (auto c = a.gen <=> b.gen; c != 0) return c;
    return b.d <=> a.d;
  }
};

struct Monomial {
  std::vector<Factor> factors;
  int lat = 0;

  static Monomial vacuum() { return {}; }
  static Monomial single(int gen, int d = 0) { return {{Factor{gen, d}}, 0}; }
  static Monomial lattice(int m) { return {{}, m}; }

  bool is_vacuum() const { return factors.empty() && lat == 0; }
  size_t length() const { return factors.size(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
    if (auto c = a.factors.size() <=> b.factors.size(); c != 0) return c;
    if (auto c = a.factors <=> b.factors; c != 0) return c;
    return a.lat <=> b.lat;
  }
};

/// Finite linear combination of canonical monomials.
class Element {
 public:
  using Map = std::map<Monomial, Scalar>;

  Element() = default;
  Element(const Monomial& m, const Scalar& c = Scalar(1)) {  // NOLINT
    if (!c.is_zero()) terms_.emplace(m, c);
  }
  static Element vacuum(const Scalar& c = Scalar(1)) { return Element(Monomial::vacuum(), c); }

  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }
  size_t size() const { return terms_.size(); }
  Scalar coeff(const Monomial& m) const;

  void add(const Monomial& m, const Scalar& c);
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element operator-() const;
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Scalar& s, const Element& e);

  /// Applies f to every coefficient, dropping zeros.
  template <class F>
  Element map_coeffs(F&& f) const {
    Element r;
    for (const auto& [m, c] : terms_) r.add(m, f(c));
    return r;
  }

  friend bool operator==(const Element&, const Element&) = default;

 private:
  Map terms_;
};

/// Polynomial in lambda with Element coefficients; entry j multiplies lambda^j
/// (plain powers). The j-th product a_(j)b equals j! times entry j.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(Element c0) {
    if (!c0.is_zero()) c_.push_back(std::move(c0));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Element& coeff(int j) const;
  const std::vector<Element>& coeffs() const { return c_; }
  /// a_(j)b.
  Element product(int j) const;

  void add(int j, const Element& e);
  LambdaPoly& operator+=(const LambdaPoly& o);
  LambdaPoly& operator-=(const LambdaPoly& o);
  friend LambdaPoly operator+(LambdaPoly a, const LambdaPoly& b) { return a += b; }
  friend LambdaPoly operator-(LambdaPoly a, const LambdaPoly& b) { return a -= b; }
  LambdaPoly operator-() const;
  friend LambdaPoly operator*(const Scalar& s, const LambdaPoly& p);
  /// Multiplies by (c * lambda)^n.
  LambdaPoly times_lambda_power(int n, const Scalar& c = Scalar(1)) const;

  template <class F>
  LambdaPoly map_elements(F&& f) const {
    LambdaPoly r;
    for (size_t j = 0; j < c_.size(); ++j) r.add(static_cast<int>(j), f(c_[j]));
    return r;
  }

  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

 private:
  void trim();
  std::vector<Element> c_;
};

BigRational factorial(int n);
BigRational binomial(int n, int k);
/// Generalized binomial coefficient C(m, i) for any integer m and i >= 0.
BigRational gbinomial(long m, int i);

}  // namespace chiral
