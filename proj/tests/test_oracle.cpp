#include "doctest.h"

#include "chiral/engine.hpp"
#include "chiral/library.hpp"
#include "chiral/oracle.hpp"

using namespace chiral;

TEST_CASE("oracle reproduces the free-field OPEs") {
  const Presentation bg = beta_gamma(1);
  ModeOracle o(bg);
  const Element beta = bg.gen_element("beta"), gamma = bg.gen_element("gamma");
  CHECK(o.product(beta, 0, gamma) == Element::vacuum(Scalar::hbar()));
  CHECK(o.product(beta, -1, gamma) == Element(Monomial{{Factor{0, 0}, Factor{1, 0}}, 0}));

  const Presentation bc = bc_system(1);
  ModeOracle ob(bc);
  CHECK(ob.product(bc.gen_element("b"), 0, bc.gen_element("c")) == Element::vacuum(Scalar::hbar()));
}

TEST_CASE("oracle refuses unsupported families") {
  CHECK_THROWS_AS(ModeOracle(virasoro(Scalar(1))), OracleUnsupported);
  CHECK_THROWS_AS(ModeOracle(localized(1)), OracleUnsupported);
  CHECK_THROWS_AS(LatticeOracle(beta_gamma(1)), OracleUnsupported);
}

TEST_CASE("engine and oracle agree on random triples") {
  for (const Presentation& p : {beta_gamma(1), bc_system(1), affine_gl(2)}) {
    const EquivalenceReport r = engine_oracle_equivalence(p, p.size() > 2 ? 60 : 120);
    INFO(p.name << ": " << r.first_mismatch);
    CHECK(r.mismatches == 0);
  }
}

TEST_CASE("lattice oracle agrees with the engine") {
  const Presentation d = localized(1);
  Engine eng(d);
  LatticeOracle o(d);
  const Element p = eng.gen("p");
  const Element e1(Monomial::lattice(1)), em1(Monomial::lattice(-1)), em2(Monomial::lattice(-2));
  const Element de = eng.derivative(e1);
  const std::vector<Element> xs = {p,  e1, em1, em2, de, eng.normal_product(p, em1),
                                   eng.normal_product(de, em2), eng.derivative(p)};
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (int n = -2; n <= 2; ++n) {
        INFO(format_element(d, a) << " (" << n << ") " << format_element(d, b));
        CHECK(o.fock_of(eng.nth_product(a, n, b)) == o.product(a, n, b));
      }
  CHECK(o.product(p, 0, em2) == o.fock_of(Scalar(-2) * Scalar::hbar() * em2));
}
