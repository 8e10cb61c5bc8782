#include "doctest.h"

#include "chiral/axioms.hpp"
#include "chiral/basis.hpp"
#include "chiral/library.hpp"

using namespace chiral;

TEST_CASE("enumerate_basis") {
  const Presentation vir = virasoro(Scalar(0));
  BasisQuery q;
  q.weight = 4;
  CHECK(enumerate_basis(vir, q).size() == 2);
  q.weight = 6;
  CHECK(enumerate_basis(vir, q).size() == 4);  // partitions of 6 into parts >= 2

  BasisQuery q0;
  CHECK_THROWS_AS(enumerate_basis(beta_gamma(1), q0), InfiniteGradedPiece);
  q0.length_cutoff = 0;
  const auto vac = enumerate_basis(affine_gl(2), q0);
  REQUIRE(vac.size() == 1);
  CHECK(vac[0].is_vacuum());

  CHECK(graded_character(affine_gl(2), 3) == std::vector<size_t>{1, 4, 14, 40});
  CHECK(graded_character(heisenberg(), 5) == std::vector<size_t>{1, 1, 2, 3, 5, 7});
}

TEST_CASE("basis respects odd generators and ghost degree") {
  const Presentation bc = bc_system(1);
  BasisQuery q;
  q.weight = 1;
  q.ghost = 0;
  q.length_cutoff = 4;
  const auto ms = enumerate_basis(bc, q);
  for (const auto& m : ms) {
    CHECK(grade_of(bc, m).ghost == 0);
    CHECK(grade_of(bc, m).weight == 1);
  }
  CHECK(ms.size() == 1);  // only :b c:
}

TEST_CASE("lattice basis needs a charge") {
  const Presentation d = localized(1);
  BasisQuery q;
  q.weight = 1;
  CHECK_THROWS_AS(enumerate_basis(d, q), InfiniteGradedPiece);
  q.e_charge = 0;
  CHECK(enumerate_basis(d, q).size() == 2);  // p, :D(E) exp(-1):
}

TEST_CASE("shipped presentations satisfy the axioms") {
  for (const Presentation& p :
       {beta_gamma(1), beta_gamma(2), bc_system(1), bc_system(2), heisenberg(), affine_gl(2),
        affine_gl(3), localized(1), localized(2), virasoro(Scalar::k())}) {
    const AxiomReport r = check_axioms(p);
    INFO(p.name << ": " << r.witness.value_or(""));
    CHECK(r.ok);
    CHECK(r.jacobi_checked > 0);
  }
}

TEST_CASE("corrupted beta-gamma table fails skewsymmetry") {
  Presentation p = beta_gamma(1);
  LambdaPoly bad;
  bad.add(0, Element::vacuum(Scalar::hbar()));
  bad.add(1, Element::vacuum(Scalar::hbar()));
  p.set_bracket("beta", "gamma", bad);
  const AxiomReport r = check_axioms(p);
  CHECK(!r.ok);
  REQUIRE(r.witness);
  CHECK(*r.witness == "skewsymmetry (beta,gamma)");
}
