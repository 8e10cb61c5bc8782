#pragma once

// Type A data: partitions, pyramids, good gradings, characters, slices.

#include <string>
#include <vector>

#include "chiral/scalars.hpp"

namespace chiral {

using Mat = std::vector<std::vector<BigRational>>;

Mat zero_mat(int n);
Mat unit(int n, int a, int b);
Mat mul(const Mat& a, const Mat& b);
Mat commutator(const Mat& a, const Mat& b);
Mat add(const Mat& a, const Mat& b, const BigRational& s = 1);
BigRational trace(const Mat& a);

struct PartitionMu {
  std::vector<int> parts;  // weakly decreasing, positive
  int N = 0;

  static PartitionMu parse(const std::string& text);  // "2,1"
  std::string str() const;
  friend bool operator==(const PartitionMu&, const PartitionMu&) = default;
};

struct CorootAlpha {
  int i = 1, j = 2;  // 1-based, i < j
  int len() const { return j - i; }
  static CorootAlpha parse(const std::string& text);
};

/// Adds alpha to mu zero-padded to n parts; throws NotDominant.
PartitionMu coroot_add(const PartitionMu& mu, const CorootAlpha& a, int n);

struct GoodGrading {
  int N = 0;
  PartitionMu mu;
  Mat e, h, f;
  std::vector<BigRational> x;  // diagonal grading element, eigenvalue 2j on g_j

  /// Grade j of the matrix unit E_ab (0-based).
  BigRational j_of(int a, int b) const { return (x[a] - x[b]) / 2; }
  /// Matrix units with j > 0, ordered by j then row-major.
  std::vector<std::pair<int, int>> positive_units() const;
};

/// Left-justified pyramid grading for mu; verifies the triple and goodness.
GoodGrading build_nilpotent(const PartitionMu& mu);

/// Good grading from a user diagonal; checks evenness and f in g_{-2}.
GoodGrading grading_from_diagonal(const PartitionMu& mu, const std::vector<BigRational>& x);

/// chi_mu(E_ab) = tr(f E_ab).
BigRational chi(const GoodGrading& g, int a, int b);

struct SliceCoordinate {
  Mat vector;
  BigRational j;
  BigRational weight;  // 1 + j
};

/// Basis of ker ad_e, homogeneous for the grading.
std::vector<SliceCoordinate> slice_coordinates(const GoodGrading& g);

/// Coefficients of prod_w prod_{n>=0} (1 - q^{w+n})^{-1} up to q^max_weight.
std::vector<size_t> slice_character(const std::vector<BigRational>& weights, int max_weight);

}  // namespace chiral
