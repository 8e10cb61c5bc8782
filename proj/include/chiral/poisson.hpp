#pragma once

// Vertex Poisson algebras of jet schemes: supercommutative polynomials in
// jet variables x^(n) = D^n x with lambda-brackets from the master formula.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral/presentation.hpp"

namespace chiral {

/// Polynomial in jet variables; a Monomial lists the variables (gen, n) in
/// canonical order, the product being taken in that order. A nonzero lat m
/// stands for the factor exp(m x) of the presentation's exponent generator x.
class JetPoly {
 public:
  using Map = std::map<Monomial, RatFuncK>;
  JetPoly() = default;
  JetPoly(const Monomial& m, const RatFuncK& c = RatFuncK(1)) {  // NOLINT
    if (!c.is_zero()) t_.emplace(m, c);
  }
  static JetPoly one(const RatFuncK& c = RatFuncK(1)) { return JetPoly(Monomial::vacuum(), c); }

  bool is_zero() const { return t_.empty(); }
  const Map& terms() const { return t_; }
  RatFuncK coeff(const Monomial& m) const;
  void add(const Monomial& m, const RatFuncK& c);
  JetPoly& operator+=(const JetPoly& o);
  JetPoly& operator-=(const JetPoly& o);
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend JetPoly operator-(JetPoly a, const JetPoly& b) { return a -= b; }
  friend JetPoly operator*(const RatFuncK& s, const JetPoly& p);
  friend bool operator==(const JetPoly&, const JetPoly&) = default;

 private:
  Map t_;
};

/// Lambda polynomial with plain lambda^j coefficients.
using JetLambda = std::vector<JetPoly>;

struct PoissonPresentation {
  std::string name;
  std::vector<Generator> generators;
  std::map<std::pair<int, int>, JetLambda> brackets;
  /// Even generator x with {x_lambda x} = 0 whose exponentials lat counts.
  std::optional<int> exponent;

  int index(const std::string& n) const;
  const JetLambda& bracket(int a, int b) const;
  /// Presentation with the same generators and no brackets (for bases).
  Presentation shape() const;
};

/// Finite-dimensional Poisson algebra on coordinates: {x_i, x_j} polynomials
/// in the coordinates, plus an optional level pairing for the jet lift.
struct FinitePoisson {
  std::string name;
  std::vector<Generator> coordinates;
  std::map<std::pair<int, int>, JetPoly> bracket;          // polynomials in jet order 0
  std::map<std::pair<int, int>, RatFuncK> level;           // lambda term of the lift
};

/// Throws NotPoisson when antisymmetry or Jacobi fail on coordinate triples.
PoissonPresentation jet_lift(const FinitePoisson& f, bool with_level = false);

/// KKS structure on gl_N^* with coordinates E{a}{b}; level pairing tr(xy).
FinitePoisson kks_gl(int n);
/// T^*A^n with {x_i, y_i} = 1; coordinates have weight 1/2.
FinitePoisson cotangent_affine(int n);
/// A^n with the zero bracket, coordinates of weight 1/2.
FinitePoisson zero_poisson(int n);

/// Brackets divided by h at h = 0; throws NotAlmostCommutative.
PoissonPresentation classical_limit(const Presentation& p);
JetPoly classical_limit(const Element& e);

/// Classical limit of a presentation with an exponential generator E, written
/// in the coordinate x = log E: E is replaced by x, which becomes the exponent
/// generator, and {y_lambda x} = exp(-x) {y_lambda E}.
PoissonPresentation classical_limit_log(const Presentation& p);

class JetAlgebra;
/// Element of p at h = 0 in the coordinates of classical_limit_log(p); alg
/// must be built on that presentation.
JetPoly classical_limit_log(const Presentation& p, const JetAlgebra& alg, const Element& e);

class JetAlgebra {
 public:
  explicit JetAlgebra(PoissonPresentation p);
  const PoissonPresentation& presentation() const { return p_; }

  JetPoly var(int gen, int n = 0) const { return JetPoly(Monomial::single(gen, n)); }
  JetPoly mul(const JetPoly& a, const JetPoly& b) const;
  JetPoly derivative(const JetPoly& a, int times = 1) const;
  JetLambda bracket(const JetPoly& a, const JetPoly& b);
  /// a_(n) b for n >= 0.
  JetPoly nth(const JetPoly& a, int n, const JetPoly& b);

  bool parity(const Monomial& m) const;
  bool parity(const JetPoly& a) const;

 private:
  JetPoly mul_mono(const Monomial& a, const Monomial& b) const;
  JetLambda br_mono(const Monomial& a, const Monomial& b);
  JetLambda br_var(const Factor& u, const Monomial& b);

  PoissonPresentation p_;
  std::map<std::pair<Monomial, Monomial>, JetLambda> cache_;
  std::map<std::pair<Factor, Monomial>, JetLambda> var_cache_;
};

void lambda_add(JetLambda& p, int j, const JetPoly& e);

std::string format_jet(const PoissonPresentation& p, const JetPoly& e);

/// Jacobi and skewsymmetry on generator triples; witness on failure.
std::optional<std::string> check_vertex_poisson(JetAlgebra& alg);

struct CasimirResult {
  BigRational weight;
  std::vector<JetPoly> classes;  // representatives of a basis of the quotient
};

/// Classes [a] in V/DV with a_(0) x = 0 for every generator x, at every
/// weight in 0, step, 2 step, ... <= cutoff.
std::vector<CasimirResult> casimir_search(JetAlgebra& alg, BigRational cutoff,
                                          BigRational step);

}  // namespace chiral
