#pragma once

// Strong generators of the reduced algebra and Virasoro identification.

#include <optional>
#include <vector>

#include "chiral/ds.hpp"

namespace chiral {

struct WGenerator {
  Element rep;  // cocycle in the full complex
  BigRational weight;
};

/// Homogeneous lift of an element known at h = 1: the coefficient of each
/// monomial m becomes its value at h = 1 times h^(H - hbar(m)). Throws when
/// some monomial has hbar weight above H.
Element homogenize(const Presentation& p, const Element& e, const BigRational& H);

/// Cocycles spanning the degree-zero cohomology at one weight, as elements of
/// the full complex, homogenized to hbar weight equal to the conformal weight.
std::vector<Element> h0_basis(DSComplex& c, const BigRational& weight);

/// At each weight <= max_weight, cocycles spanning H^0 modulo derivatives and
/// normally ordered products of lower generators. Deterministic: candidates
/// are taken in echelon order of the kernel basis.
std::vector<WGenerator> extract_generators(DSComplex& c, int max_weight);

struct VirasoroDatum {
  Element L;
  RatFuncK c;
};

/// Searches span(candidates) for L with L_(0) g = Dg and L_(1) g = w g for
/// every listed primary, L_(2) g = 0 for weight-1 primaries, then requires
///   [L_l L] = (D + 2l)L + (c/12) l^3
/// exactly. Coefficients are compared at h = 1; L is returned homogenized to
/// hbar weight 2. None when the linear conditions have no solution or more
/// than one.
std::optional<VirasoroDatum> find_virasoro(Engine& eng, const std::vector<Element>& candidates,
                                           const std::vector<WGenerator>& primaries);

/// find_virasoro on H^0 at weight 2 with the extracted generators of weight <= 2.
std::optional<VirasoroDatum> identify_virasoro(DSComplex& c);

/// Replaces k by k0 in every coefficient.
Element specialize_k(const Element& e, const BigRational& k0);
Presentation specialize_k(const Presentation& p, const BigRational& k0);

/// 2 L_(3) L evaluated at h = 1 by the mode oracle at k = k0, with conformal
/// weights overridden by `weights` (which must make every bracket homogeneous).
BigRational mode_central_charge(const Presentation& p, const Element& L, const BigRational& k0,
                                const std::vector<BigRational>& weights);

}  // namespace chiral
