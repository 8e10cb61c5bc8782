#pragma once

// Multivariate polynomials over Q(k), Groebner bases in lex order, and a
// staged solver for small polynomial systems with rational solutions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral/scalars.hpp"

namespace chiral {

class MPoly {
 public:
  using Exp = std::vector<int>;
  MPoly() = default;
  explicit MPoly(int nvars) : n_(nvars) {}
  static MPoly constant(int nvars, const RatFuncK& c);
  static MPoly var(int nvars, int i, const RatFuncK& c = RatFuncK(1));

  int nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<Exp, RatFuncK>& terms() const { return t_; }
  int degree() const;
  bool is_constant() const { return degree() <= 0; }
  RatFuncK constant_term() const;
  RatFuncK coeff(const Exp& e) const;
  /// Largest term in lex order (x0 > x1 > ...).
  const std::pair<const Exp, RatFuncK>& lead() const { return *t_.rbegin(); }

  void add(const Exp& e, const RatFuncK& c);
  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const RatFuncK& s, const MPoly& p);
  friend bool operator==(const MPoly&, const MPoly&) = default;

  /// Replaces x_i by images[i] (polynomials in a possibly different ring).
  MPoly substitute(const std::vector<MPoly>& images) const;
  RatFuncK evaluate(const std::vector<RatFuncK>& x) const;
  std::string str() const;

 private:
  int n_ = 0;
  std::map<Exp, RatFuncK> t_;
};

/// Reduced Groebner basis in lex order.
std::vector<MPoly> groebner(std::vector<MPoly> gens);

struct PolySolution {
  std::vector<RatFuncK> values;
  size_t free_parameters = 0;  // set to zero in `values`
};

/// Staged solve. Linear consequences of the current equations (row reduction
/// with nonlinear monomials eliminated first) are solved and substituted;
/// when none exist, a lex Groebner basis supplies linear members, or a
/// univariate quadratic with roots in Q(k) is branched on (first solvable
/// root in a fixed order). Throws Unsolvable with the residual generators.
PolySolution solve_polynomial_system(const std::vector<MPoly>& eqs, int nvars);

}  // namespace chiral
