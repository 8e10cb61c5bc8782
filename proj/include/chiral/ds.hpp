#pragma once

// Quantum Drinfeld-Sokolov complex of V_h^k(gl_N) at a good grading.
//
// The full complex V (x) Cl(n) has infinite weight pieces whenever some
// generator has weight <= 0, so cohomology is computed on the reduced
// subcomplex C_- generated by the ghosts c_i and the dressed currents
//   Jhat^a = J^a + sum_{j,k} (pi_{>0}[a, x_j])_k :b_k c_j:,   a in g_{<=0},
// whose weight pieces are finite and whose cohomology is that of the full
// complex.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "chiral/engine.hpp"
#include "chiral/lie.hpp"
#include "chiral/linalg.hpp"

namespace chiral {

struct DSOptions {
  bool drop_trilinear = false;  // control experiment: d^2 must then fail
};

/// Matrix of D: C^{w,g} -> C^{w,g+1}, one sparse column per source vector.
struct CellMatrix {
  BigRational weight;
  int ghost = 0;
  std::vector<Monomial> src, dst;
  std::vector<SparseRow<Scalar>> columns;  // column j: dst index -> entry
  bool hbar_homogeneous = true;
};

struct DSquaredReport {
  bool ok = true;
  size_t checks = 0;
  std::string witness;
};

struct CohomologyTable {
  int max_weight = 0;
  int max_ghost = 0;
  // dims[w][g] for ghost g in 0..max_ghost
  std::vector<std::vector<size_t>> complex_dims, cohomology_dims;
  bool hbar_homogeneous = true;
};

class DSComplex {
 public:
  DSComplex(const GoodGrading& g, DSOptions opt = {});

  const GoodGrading& grading() const { return g_; }
  const Presentation& big() const { return eng_.presentation(); }
  Engine& engine() { return eng_; }
  const Element& differential() const { return d_; }
  const Presentation& reduced() const { return cminus_; }
  size_t ghost_count() const { return units_.size(); }
  const std::vector<std::pair<int, int>>& positive_units() const { return units_; }

  int J(int a, int b) const { return a * g_.N + b; }
  int b_gen(int i) const { return g_.N * g_.N + i; }
  int c_gen(int i) const { return g_.N * g_.N + static_cast<int>(units_.size()) + i; }

  /// (1/h) d_(0) v.
  Element D(const Element& v);

  /// Expansion of a C_- generator or monomial in the full complex.
  const Element& generator_expansion(int cminus_gen) const { return gen_exp_[cminus_gen]; }
  Element expand(const Monomial& m);

  std::vector<Monomial> basis(const BigRational& weight, int ghost);
  /// Coordinates of x in the C_- basis; throws when x is not in C_-.
  std::map<Monomial, Scalar> decompose(const Element& x);

  CellMatrix matrix(const BigRational& weight, int ghost);
  CohomologyTable cohomology(int max_weight);

  /// d_(0) d as an element (zero iff the differential squares to zero).
  Element d_zero_d();

  /// d_(0) d = 0, D^2 = 0 on the full-complex generators and their first
  /// derivatives, and D^2 = 0 on every reduced-complex cell up to max_weight.
  DSquaredReport check_d_squared(int max_weight);

 private:
  bool pure(const Monomial& m) const;
  Monomial to_reduced(const Monomial& m) const;

  GoodGrading g_;
  DSOptions opt_;
  std::vector<std::pair<int, int>> units_;
  Engine eng_;
  Element d_;
  Presentation cminus_;
  std::vector<Element> gen_exp_;
  std::vector<int> big_of_reduced_;  // C_- generator -> big generator
  std::map<int, int> reduced_of_big_;
  std::map<Monomial, Element> expand_cache_;
};

Presentation ds_full_presentation(const GoodGrading& g);

}  // namespace chiral
