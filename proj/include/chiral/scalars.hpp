#pragma once

// Exact coefficients: rationals, polynomials and rational functions in the
// level k, and polynomials in h (the formal parameter of h-adic algebras).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chiral/errors.hpp"

namespace chiral {

using BigRational = mpq_class;

std::string to_string(const BigRational& q);

/// Dense univariate polynomial in k over Q; coefficient i multiplies k^i.
/// The coefficient vector never has a trailing zero.
class PolyQ {
 public:
  PolyQ() = default;
  PolyQ(long c);  // NOLINT(google-explicit-constructor)
  PolyQ(const BigRational& c);  // NOLINT(google-explicit-constructor)
  explicit PolyQ(std::vector<BigRational> coeffs);

  static PolyQ k();
  static PolyQ monomial(const BigRational& c, int degree);

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<BigRational>& coeffs() const { return c_; }
  BigRational coeff(int i) const;
  BigRational lead() const { return c_.empty() ? BigRational(0) : c_.back(); }

  PolyQ operator-() const;
  PolyQ& operator+=(const PolyQ& o);
  PolyQ& operator-=(const PolyQ& o);
  friend PolyQ operator+(PolyQ a, const PolyQ& b) { return a += b; }
  friend PolyQ operator-(PolyQ a, const PolyQ& b) { return a -= b; }
  friend PolyQ operator*(const PolyQ& a, const PolyQ& b);
  PolyQ scaled(const BigRational& s) const;

  /// Quotient and remainder; throws ZeroDenominator on division by zero.
  static void divmod(const PolyQ& a, const PolyQ& b, PolyQ& q, PolyQ& r);
  /// Exact division; the caller guarantees b | a.
  static PolyQ exact_div(const PolyQ& a, const PolyQ& b);
  static PolyQ gcd(PolyQ a, PolyQ b);  // monic, gcd(0,0) = 0

  PolyQ monic() const;
  BigRational eval(const BigRational& x) const;
  PolyQ derivative() const;

  friend bool operator==(const PolyQ&, const PolyQ&) = default;
  std::strong_ordering compare(const PolyQ& o) const;

  std::string str(const char* var = "k") const;

 private:
  void trim();
  std::vector<BigRational> c_;
};

/// Reduced rational function in k: gcd(num, den) = 1, den monic, 0 = 0/1.
class RatFuncK {
 public:
  RatFuncK() : den_(1) {}
  RatFuncK(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RatFuncK(const BigRational& c) : num_(c), den_(1) {}  // NOLINT
  RatFuncK(const PolyQ& p) : num_(p), den_(1) {}  // NOLINT

  /// Reduces n/d to canonical form; throws ZeroDenominator when d = 0.
  static RatFuncK normalize(const PolyQ& n, const PolyQ& d);
  static RatFuncK k() { return RatFuncK(PolyQ::k()); }

  const PolyQ& num() const { return num_; }
  const PolyQ& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.lead() == 1; }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Rational value of a constant function.
  BigRational constant() const;

  RatFuncK operator-() const;
  friend RatFuncK operator+(const RatFuncK& a, const RatFuncK& b);
  friend RatFuncK operator-(const RatFuncK& a, const RatFuncK& b);
  friend RatFuncK operator*(const RatFuncK& a, const RatFuncK& b);
  friend RatFuncK operator/(const RatFuncK& a, const RatFuncK& b);
  RatFuncK& operator+=(const RatFuncK& o) { return *this = *this + o; }
  RatFuncK& operator-=(const RatFuncK& o) { return *this = *this - o; }
  RatFuncK& operator*=(const RatFuncK& o) { return *this = *this * o; }
  RatFuncK inverse() const;

  /// Exact value at k = k0; throws PoleAtLevel when den(k0) = 0.
  BigRational eval(const BigRational& k0) const;

  friend bool operator==(const RatFuncK&, const RatFuncK&) = default;
  std::string str() const;

 private:
  RatFuncK(PolyQ n, PolyQ d, bool) : num_(std::move(n)), den_(std::move(d)) {}
  PolyQ num_;
  PolyQ den_;
};

/// Polynomial in h with coefficients in Q(k). Entry i multiplies h^i.
/// An optional truncation order drops every h-degree above it.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c) : Scalar(RatFuncK(c)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const BigRational& c) : Scalar(RatFuncK(c)) {}  // NOLINT
  Scalar(const RatFuncK& c);  // NOLINT(google-explicit-constructor)

  static Scalar hbar(int power = 1);
  static Scalar k() { return Scalar(RatFuncK::k()); }
  static Scalar term(const RatFuncK& c, int hbar_degree);

  bool is_zero() const { return t_.empty(); }
  /// Largest h-degree present, -1 for zero.
  int hbar_degree() const { return static_cast<int>(t_.size()) - 1; }
  /// Smallest h-degree present, -1 for zero.
  int hbar_valuation() const;
  RatFuncK coeff(int hbar_degree) const;
  const std::vector<RatFuncK>& terms() const { return t_; }
  bool is_unit() const { return t_.size() == 1 && !t_[0].is_zero(); }

  std::optional<int> truncation() const { return trunc_; }
  Scalar with_truncation(std::optional<int> order) const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Division by a unit (nonzero, h-free); otherwise NotAUnit.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  /// Divides by h^n when every term has h-degree >= n; otherwise NotAUnit.
  Scalar divide_hbar(int n) const;
  Scalar times_hbar(int n) const;

  /// Specialization h = 0 (classical part) or h = 1.
  RatFuncK hbar_specialize(int value) const;
  /// Exact specialization k = k0, as an h-polynomial over Q.
  std::vector<BigRational> eval_at_k(const BigRational& k0) const;

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.t_ == b.t_; }
  std::string str() const;

 private:
  void trim();
  std::vector<RatFuncK> t_;
  std::optional<int> trunc_;
};

/// Parses the scalar grammar: integers, k, h, + - * / ^ and parentheses.
Scalar parse_scalar(const std::string& text);

}  // namespace chiral
