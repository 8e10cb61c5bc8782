#include "doctest.h"

#include "chiral/engine.hpp"
#include "chiral/library.hpp"

using namespace chiral;

namespace {

const Scalar h = Scalar::hbar();

LambdaPoly lam(std::initializer_list<Element> coeffs) {
  LambdaPoly p;
  int j = 0;
  for (const auto& c : coeffs) p.add(j++, c);
  return p;
}

}  // namespace

TEST_CASE("beta-gamma brackets and normal ordering") {
  Engine eng(beta_gamma(1));
  const Element beta = eng.gen("beta"), gamma = eng.gen("gamma");
  CHECK(eng.bracket(beta, gamma) == lam({Element::vacuum(h)}));
  CHECK(eng.normal_product(gamma, beta) == eng.normal_product(beta, gamma));
  CHECK(eng.normal_product(beta, gamma).size() == 1);
  const Element gg = eng.normal_product(gamma, gamma);
  CHECK(eng.bracket(beta, gg) == lam({Scalar(2) * h * gamma}));
  CHECK(eng.nth_product(beta, -2, gamma) == eng.normal_product(eng.gen("beta", 1), gamma));
  CHECK(eng.nth_product(beta, -1, Element::vacuum()) == beta);
  CHECK(eng.nth_product(beta, 0, Element::vacuum()).is_zero());
  CHECK(eng.nth_product(beta, 0, gamma) == Element::vacuum(h));
}

TEST_CASE("ghost normal ordering") {
  Engine eng(bc_system(1));
  const Element b = eng.gen("b"), c = eng.gen("c");
  CHECK(eng.normal_product(c, b) == -eng.normal_product(b, c));
  CHECK(eng.normal_product(c, c).is_zero());
  CHECK(eng.nth_product(b, 0, c) == Element::vacuum(h));
  // :(Dc) Dc: vanishes, :(D^2 c)(Dc): does not
  CHECK(eng.normal_product(eng.gen("c", 1), eng.gen("c", 1)).is_zero());
  CHECK(!eng.normal_product(eng.gen("c", 2), eng.gen("c", 1)).is_zero());
}

TEST_CASE("affine gl2 bracket") {
  Engine eng(affine_gl(2));
  const LambdaPoly got = eng.bracket(eng.gen("E12"), eng.gen("E21"));
  const Element h0 = h * (eng.gen("E11") - eng.gen("E22"));
  CHECK(got == lam({h0, Element::vacuum(Scalar::hbar(2) * Scalar::k())}));
  CHECK(eng.nth_product(eng.gen("E12"), 0, eng.gen("E21")) == h0);
}

TEST_CASE("sesquilinearity and derivation") {
  Engine eng(affine_gl(2));
  const Element a = eng.normal_product(eng.gen("E12"), eng.gen("E21"));
  const Element b = eng.normal_product(eng.gen("E11"), eng.gen("E12", 1));
  const LambdaPoly ab = eng.bracket(a, b);
  CHECK(eng.bracket(eng.derivative(a), b) == ab.times_lambda_power(1, Scalar(-1)));
  CHECK(eng.bracket(a, eng.derivative(b)) == eng.shift_lambda_plus_d(ab, 1));
  CHECK(eng.derivative(eng.normal_product(a, b)) ==
        eng.normal_product(eng.derivative(a), b) + eng.normal_product(a, eng.derivative(b)));
  for (int n = -3; n <= 3; ++n) {
    CHECK(eng.derivative(eng.nth_product(a, n, b)) ==
          eng.nth_product(eng.derivative(a), n, b) + eng.nth_product(a, n, eng.derivative(b)));
  }
}

TEST_CASE("skewsymmetry of composite brackets") {
  Engine eng(affine_gl(2));
  const Element a = eng.normal_product(eng.gen("E12"), eng.gen("E22"));
  const Element b = eng.normal_product(eng.gen("E21"), eng.gen("E11", 1));
  CHECK(eng.bracket(b, a) == -eng.reflect(eng.bracket(a, b)));
}

TEST_CASE("quasi-commutativity") {
  Engine eng(affine_gl(2));
  const Element a = eng.gen("E21", 1);
  const Element b = eng.normal_product(eng.gen("E12"), eng.gen("E11"));
  Element lhs = eng.normal_product(a, b) - eng.normal_product(b, a);
  Element rhs;
  const LambdaPoly br = eng.bracket(a, b);
  for (int j = 0; j <= br.degree(); ++j) {
    BigRational f(j % 2 == 0 ? 1 : -1);
    f /= j + 1;
    rhs += Scalar(f) * eng.derivative(br.coeff(j), j + 1);
  }
  CHECK(lhs == rhs);
}

TEST_CASE("free-field Virasoro element") {
  Engine eng(beta_gamma(1));
  const Element L = eng.normal_product(eng.gen("beta"), eng.gen("gamma", 1));
  const LambdaPoly got = eng.bracket(L, L);
  // [L_l L] = h (D + 2l) L + h^2 c l^3 / 12 with c = 2
  LambdaPoly want;
  want.add(0, h * eng.derivative(L));
  want.add(1, Scalar(2) * h * L);
  want.add(3, Element::vacuum(Scalar::hbar(2) * Scalar(BigRational(1, 6))));
  CHECK(got == want);
}

TEST_CASE("localized free fields") {
  Engine eng(localized(1));
  const Element p = eng.gen("p");
  const Element e1(Monomial::lattice(1)), em1(Monomial::lattice(-1)), em2(Monomial::lattice(-2));
  CHECK(eng.bracket(p, e1) == lam({h * e1}));
  CHECK(eng.bracket(p, em2) == lam({Scalar(-2) * h * em2}));
  CHECK(eng.normal_product(e1, em1) == Element::vacuum());
  CHECK(eng.normal_product(em1, e1) == Element::vacuum());
  // D c = :(D e) e^{-1}: pairs with p like a Heisenberg field
  const Element dc = eng.normal_product(eng.derivative(e1), em1);
  CHECK(eng.bracket(p, dc) == lam({Element(), Element::vacuum(h)}));
  CHECK(eng.bracket(dc, dc).is_zero());
  // quotient rule
  CHECK(eng.derivative(em2) == Scalar(-2) * eng.normal_product(eng.derivative(e1), Element(Monomial::lattice(-3))));
  CHECK(eng.bracket(em1, p) == lam({h * em1}));
}

TEST_CASE("normal_order of nested words") {
  Engine eng(beta_gamma(1));
  const int b = 0, g = 1;
  const auto w = NestedWord::product(NestedWord::leaf(g), -1, NestedWord::leaf(b, 1));
  CHECK(eng.normal_order(w) == eng.normal_product(eng.gen("beta", 1), eng.gen("gamma")));
  const auto w2 = NestedWord::product(NestedWord::leaf(b), 0, w);
  CHECK(eng.normal_order(w2) == eng.nth_product(eng.gen("beta"), 0, eng.normal_order(w)));
}
