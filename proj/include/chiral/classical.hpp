#pragma once

// Classical BRST reduction of the jet algebra of gl_N^* (KKS bracket) at a
// good grading, on the same reduced subcomplex as the quantum reduction:
// generated by the ghosts c_i and Jhat^a = J^a + sum (pi_{>0}[a, x_j])_k b_k c_j.

#include <map>
#include <string>
#include <vector>

#include "chiral/ds.hpp"
#include "chiral/poisson.hpp"

namespace chiral {

struct ClassicalCellMatrix {
  BigRational weight;
  int ghost = 0;
  std::vector<Monomial> src, dst;
  std::vector<SparseRow<RatFuncK>> columns;
};

/// The grading with x negated and the triple (f, -h, e); used as a control.
GoodGrading mirrored(const GoodGrading& g);

/// Classical BRST presentation: jets of KKS gl_N^* with odd pairs {b_i, c_i} = 1.
PoissonPresentation classical_brst_presentation(const GoodGrading& g);

class ClassicalDS {
 public:
  explicit ClassicalDS(const GoodGrading& g);

  const GoodGrading& grading() const { return g_; }
  JetAlgebra& algebra() { return alg_; }
  const JetPoly& differential() const { return d_; }
  const Presentation& reduced() const { return cminus_; }

  /// d_(0) v.
  JetPoly D(const JetPoly& v);
  JetPoly expand(const Monomial& m);
  std::vector<Monomial> basis(const BigRational& weight, int ghost) const;
  std::map<Monomial, RatFuncK> decompose(const JetPoly& x);
  ClassicalCellMatrix matrix(const BigRational& weight, int ghost);
  CohomologyTable cohomology(int max_weight);
  DSquaredReport check_d_squared(int max_weight);

 private:
  GoodGrading g_;
  std::vector<std::pair<int, int>> units_;
  JetAlgebra alg_;
  JetPoly d_;
  Presentation cminus_;
  std::vector<JetPoly> gen_exp_;
  std::map<int, int> reduced_of_big_;
  std::map<Monomial, JetPoly> expand_cache_;
};

struct CompareReport {
  bool ok = true;
  size_t cells = 0;
  std::string witness;
};

/// h -> 0 of every quantum C_- matrix against the classical one, cell by
/// cell up to max_weight, plus agreement of the degree-zero dimensions.
CompareReport classical_compare(DSComplex& q, ClassicalDS& c, int max_weight);

}  // namespace chiral
