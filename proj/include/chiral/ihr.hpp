#pragma once

// Inverse Hamiltonian reduction: embeddings of a source algebra into a
// W-algebra tensored with localized free fields, solved from an ansatz and
// verified by exact recomputation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral/lie.hpp"
#include "chiral/poisson.hpp"
#include "chiral/presentation.hpp"

namespace chiral {

/// Rank-one localized free fields with len - 1 beta-gamma pairs.
Presentation build_localized(int len);

/// Grade of the image of one source generator.
struct ImageGrade {
  BigRational weight;
  int e_charge = 0;
};

/// Strong generator of the W factor, written in the target.
struct WordGenerator {
  std::string name;
  Element rep;
  BigRational weight;
  int e_charge = 0;
};

/// Constraint sum_i c_i phi(x_i) = value.
struct LinearPin {
  std::vector<std::pair<int, RatFuncK>> combination;
  Element value;
};

struct EmbeddingProblem {
  std::string label;
  Presentation source;
  Presentation target;
  std::vector<WordGenerator> words;
  std::optional<Presentation> loc;  // localized factor, generators from loc_offset
  int loc_offset = 0;
  std::vector<ImageGrade> grade;     // per source generator
  std::map<int, Element> comoment;   // declared comoment images
  std::map<int, Element> pinned;     // fixed images
  std::vector<LinearPin> linear_pins;
  int length_cap = 4;
};

/// Fixes the image of every declared comoment generator; throws NoComoment.
EmbeddingProblem pin_comoment(EmbeddingProblem p);

/// V^k(gl_N) into W^k_{mu+alpha} (x) D_loc for mu = [1^N]; only N = 2 is built.
/// The trace of the source is pinned to the trace current of the W factor.
EmbeddingProblem gl_embedding_problem(int n, const PartitionMu& mu, const CorootAlpha& alpha);

/// V^k(gl_N) into itself with the same pins; the solution is the identity.
EmbeddingProblem identity_problem(int n);

struct EmbeddingCertificate {
  int pairs_checked = 0;
  std::vector<std::pair<int, size_t>> injectivity;  // (weight, rank = dimension)
  bool classical_ok = false;
  std::string classical_witness;  // first failing pair when not ok
};

struct EmbeddingSolution {
  EmbeddingProblem problem;
  std::vector<Element> images;
  int unknowns = 0;
  int free_parameters = 0;
  EmbeddingCertificate certificate;
};

/// Solves the pinned problem and verifies the result; throws AnsatzTooSmall,
/// Unsolvable, or the verification errors.
EmbeddingSolution solve_embedding(const EmbeddingProblem& p, int weight_cutoff);

/// Recomputes every ordered pair of brackets with a fresh engine (throws
/// ResidualNonzero), checks injectivity on the source PBW basis up to the
/// cutoff (throws ResidualNonzero naming the weight), and the classical shadow.
EmbeddingCertificate verify_embedding(const EmbeddingProblem& p,
                                      const std::vector<Element>& images, int weight_cutoff);

/// Classical limit of the images as jet polynomials in log coordinates.
std::vector<JetPoly> classical_shadow(const EmbeddingProblem& p, const JetAlgebra& alg,
                                      const std::vector<Element>& images);

struct StagesReport {
  PartitionMu from, to;
  std::optional<std::pair<int, int>> root;  // 0-based unit added to n_mu
  std::vector<size_t> staged, direct;        // degree-zero dims by weight
  bool higher_vanish = true;                 // staged ghost degrees != 0
  bool ok = false;
};

/// Classical reduction by stages: the BRST data of mu extended by one root
/// with character chi_mu + chi_alpha, graded by a good grading adapted to the
/// extended nilpotent, against the direct reduction at mu + alpha. Only
/// principal targets are built.
StagesReport stages_check(int n, const PartitionMu& mu, const CorootAlpha& alpha, int max_weight);

}  // namespace chiral
