#pragma once

// Independent check of n-th products by explicit mode action on the vacuum
// module. Shares nothing with the Wick-rule engine beyond the data types.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral/presentation.hpp"

namespace chiral {

/// Ordered creation word g1_(n1) g2_(n2) ... |0>.
using ModeWord = std::vector<std::pair<int, int>>;
using State = std::map<ModeWord, Scalar>;

/// Mode algebra of a presentation whose generator brackets are linear in the
/// generators and their derivatives (free fields, currents, ghosts).
class ModeOracle {
 public:
  /// `weights` overrides conformal weights; they must be >= 0 and make every
  /// bracket homogeneous.
  explicit ModeOracle(Presentation p, std::optional<std::vector<BigRational>> weights = {});

  State state_of(const Element& e) const;
  Element element_of(const State& s) const;

  State apply(const Element& a, int n, const State& s);
  Element product(const Element& a, int n, const Element& b);

 private:
  State apply_gen(int g, int n, const ModeWord& w);
  State apply_gen(int g, int n, const State& s);
  State apply_monomial(const Monomial& u, int k, const State& s);
  /// (D^d g)_(p) on a state.
  State apply_dressed(int g, int d, int p, const State& s);
  /// [g_(n), h_(m)] applied to a state.
  State apply_commutator(int g, int n, int h, int m, const State& s);
  BigRational weight_of(const ModeWord& w) const;
  BigRational weight_of(const Monomial& m) const;

  Presentation p_;
  std::vector<BigRational> wt_;
  std::map<std::tuple<int, int, ModeWord>, State> cache_;
};

/// Heisenberg-lattice model of the rank-one localized free fields:
/// fields c, d with [c_l d] = l, p = h d, E = e^c. Results are compared in
/// the Fock space, where p is not invertible.
class LatticeOracle {
 public:
  struct FockKey {
    int charge = 0;
    std::vector<int> c_modes;  // sorted n >= 1, one entry per c_{-n}
    std::vector<int> d_modes;
    friend auto operator<=>(const FockKey&, const FockKey&) = default;
  };
  using Fock = std::map<FockKey, Scalar>;

  explicit LatticeOracle(Presentation p);

  Fock fock_of(const Element& e);
  /// a_(n) b evaluated by mode action.
  Fock product(const Element& a, int n, const Element& b);

 private:
  Fock apply_monomial(const Monomial& m, int k, const Fock& s);
  Fock apply_dressed(const Factor& f, int k, const Fock& s);
  Fock apply_exp(int m, int k, const Fock& s);
  Fock apply_c(int n, const Fock& s);
  Fock apply_d(int n, const Fock& s);
  BigRational weight_of(const Monomial& m) const;

  Presentation p_;
  int p_idx_ = 0, e_idx_ = 1;
};

}  // namespace chiral

namespace chiral {

struct EquivalenceReport {
  size_t checked = 0;
  size_t mismatches = 0;
  std::string first_mismatch;
};

/// Compares engine n-th products with the mode oracle on `count`
/// deterministic pseudo-random triples (a, n, b) of total weight <= max_weight.
EquivalenceReport engine_oracle_equivalence(const Presentation& p, size_t count,
                                            unsigned seed = 20240601, int max_weight = 4);

}  // namespace chiral
