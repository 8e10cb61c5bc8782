#pragma once

// Shipped presentations.

#include "chiral/presentation.hpp"

namespace chiral {

/// beta_i (weight 1) and gamma_i (weight 0) with [beta_i l gamma_j] = h delta_ij.
Presentation beta_gamma(int rank);
/// Odd b_i (weight 1, ghost -1) and c_i (weight 0, ghost 1), [b_i l c_j] = h delta_ij.
Presentation bc_system(int rank);
/// One boson a with [a_l a] = h^2 l.
Presentation heisenberg();
/// V_h^k(gl_N) on matrix units E{a}{b}:
/// [x_l y] = h [x,y] + h^2 k l tr(xy).
Presentation affine_gl(int n);
/// [L_l L] = (D + 2l) L + c/12 l^3 with central charge c.
Presentation virasoro(const Scalar& c);
/// Localized free fields: p, the exponential E = e^1 and len-1 beta-gamma pairs.
Presentation localized(int len);

}  // namespace chiral
