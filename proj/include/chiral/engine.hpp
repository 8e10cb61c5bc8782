#pragma once

// Lambda-bracket and normal-ordering calculus on a presentation.
//
// Rewriting rules:
//   quasi-commutativity  :a:bc:: - p(a,b):b:ac:: = :(int_{-D}^0 [a_l b] dl) c:
//   quasi-associativity  ::ab:c: = :a:bc:: + :(int_0^D dl a)[b_l c]:
//                                    + p(a,b):(int_0^D dl b)[a_l c]:
//   right Wick  [a_l :bc:] = :[a_l b]c: + p(a,b):b[a_l c]: + int_0^l [[a_l b]_m c] dm
//   left Wick   [:ab:_l c] = :(e^{D d_l} a)[b_l c]: + p(a,b):(e^{D d_l} b)[a_l c]:
//                             + p(a,b) int_0^l [b_m [a_{l-m} c]] dm
// Lattice exponentials e^m commute with everything whose bracket with e^1
// vanishes; [x_l e^m] = m :[x_l e^1] e^{m-1}: for lambda-free [x_l e^1].

#include <map>
#include <memory>
#include <utility>

#include "chiral/presentation.hpp"

namespace chiral {

/// Nested n-th products of generators, the input of normal_order.
struct NestedWord {
  int gen = -1;  // leaf when >= 0
  int d = 0;     // D-power on a leaf
  int n = -1;    // product index for an internal node
  std::shared_ptr<NestedWord> left, right;

  static NestedWord leaf(int gen, int d = 0);
  static NestedWord product(NestedWord a, int n, NestedWord b);
};

class Engine {
 public:
  explicit Engine(Presentation p);

  const Presentation& presentation() const { return p_; }

  Element normal_product(const Element& a, const Element& b);
  Element derivative(const Element& a, int times = 1);
  LambdaPoly bracket(const Element& a, const Element& b);
  /// a_(n)b for any integer n; a_(-1-j)b = :(D^j a / j!) b:.
  Element nth_product(const Element& a, int n, const Element& b);
  Element normal_order(const NestedWord& w);

  Element gen(int i, int d = 0) const { return p_.gen_element(i, d); }
  Element gen(const std::string& name, int d = 0) const { return p_.gen_element(name, d); }

  /// Fills bracket (b,a) from (a,b) by skewsymmetry for every pair where only
  /// one order is present.
  void complete_skew();

  /// Applies (lambda + D)^b to a lambda polynomial.
  LambdaPoly shift_lambda_plus_d(const LambdaPoly& p, int b);
  /// Evaluates P(-lambda - D), used by skewsymmetry.
  LambdaPoly reflect(const LambdaPoly& p);

  void clear_cache();
  size_t cache_size() const;

 private:
  // An atom is a single generator factor or, with gen == kLattice, the
  // lattice exponential e^d.
  static constexpr int kLattice = -1;
  Factor lattice_atom(int m) const { return Factor{kLattice, m}; }
  bool is_lattice(const Factor& f) const { return f.gen == kLattice; }
  Factor normalize_atom(const Factor& f) const;
  bool atom_odd(const Factor& f) const;

  Element insert(const Factor& f, const Monomial& m);
  Element insert(const Factor& f, const Element& e);
  Element nprod(const Monomial& a, const Monomial& b);
  Element nprod(const Element& a, const Monomial& b);
  Element deriv(const Monomial& m);
  LambdaPoly br(const Monomial& a, const Monomial& b);
  LambdaPoly br(const Element& a, const Monomial& b);
  LambdaPoly br(const Element& a, const Element& b);
  LambdaPoly br_atom(const Factor& a, const Monomial& m);
  /// [a_l f] for atoms a and f.
  LambdaPoly br_atoms(const Factor& a, const Factor& f);
  /// int_{-D}^0 P(l) dl.
  Element integrate_minus_d(const LambdaPoly& p);

  Monomial rest(const Monomial& m) const;

  Presentation p_;
  std::optional<int> exp_;
  std::map<std::pair<Factor, Monomial>, Element> insert_cache_;
  std::map<std::pair<Monomial, Monomial>, Element> nprod_cache_;
  std::map<Monomial, Element> deriv_cache_;
  std::map<std::pair<Monomial, Monomial>, LambdaPoly> br_cache_;
  std::map<std::pair<Factor, Monomial>, LambdaPoly> br_atom_cache_;
};

}  // namespace chiral
