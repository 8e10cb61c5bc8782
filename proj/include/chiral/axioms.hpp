#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "chiral/engine.hpp"

namespace chiral {

/// Coefficients of lambda^i mu^j.
using BiPoly = std::map<std::pair<int, int>, Element>;

/// [a_l [b_m c]] - p(a,b)[b_m [a_l c]] - [[a_l b]_{l+m} c]; empty when Jacobi holds.
BiPoly jacobi_residual(Engine& eng, const Element& a, const Element& b, const Element& c);

/// [b_l a] + p(a,b) [a_{-l-D} b]; zero when skewsymmetry holds.
LambdaPoly skew_residual(Engine& eng, const Element& a, const Element& b);

struct AxiomReport {
  bool ok = true;
  size_t skew_checked = 0;
  size_t jacobi_checked = 0;
  std::vector<std::string> lines;  // one per checked identity
  std::optional<std::string> witness;
};

struct AxiomOptions {
  int weight_cutoff = 3;
  int length_cutoff = 2;
  int composite_samples = 6;
};

AxiomReport check_axioms(const Presentation& p, const AxiomOptions& opt = {});

}  // namespace chiral
