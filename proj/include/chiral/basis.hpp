#pragma once

#include <optional>
#include <vector>

#include "chiral/presentation.hpp"

namespace chiral {

struct BasisQuery {
  BigRational weight = 0;
  std::optional<int> ghost;           // any ghost degree when absent
  std::optional<int> length_cutoff;   // max number of factors
  std::optional<int> e_charge;        // required with an exponential generator
};

/// Canonical PBW monomials of the requested grade, in Monomial order.
std::vector<Monomial> enumerate_basis(const Presentation& p, const BasisQuery& q);

/// Dimensions of weights 0..max_weight (integral weights only).
std::vector<size_t> graded_character(const Presentation& p, int max_weight,
                                     std::optional<int> length_cutoff = std::nullopt);

}  // namespace chiral
