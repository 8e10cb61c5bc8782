#include "doctest.h"

#include "chiral/engine.hpp"
#include "chiral/errors.hpp"
#include "chiral/ihr.hpp"
#include "chiral/library.hpp"

using namespace chiral;

namespace {

const EmbeddingSolution& gl2_solution() {
  static const EmbeddingSolution s = solve_embedding(
      pin_comoment(gl_embedding_problem(2, PartitionMu::parse("1,1"), CorootAlpha::parse("1,2"))),
      3);
  return s;
}

int charge_of(const Presentation& p, const Element& e) {
  const int c = grade_of(p, e.terms().begin()->first).e_charge;
  for (const auto& [m, s] : e.terms()) REQUIRE(grade_of(p, m).e_charge == c);
  return c;
}

}  // namespace

TEST_CASE("localized free fields: exponential products and charges") {
  const Presentation loc = build_localized(1);
  Engine eng(loc);
  const Element e1(Monomial::lattice(1)), em1(Monomial::lattice(-1));
  CHECK(eng.normal_product(e1, em1) == Element::vacuum());
  const LambdaPoly b = eng.bracket(eng.gen("p"), Element(Monomial::lattice(-2)));
  CHECK(b.degree() == 0);
  CHECK(b.coeff(0) == Element(Monomial::lattice(-2), Scalar::hbar() * Scalar(-2)));
}

TEST_CASE("pinning without a declared comoment is rejected") {
  EmbeddingProblem p = identity_problem(2);
  p.comoment.clear();
  CHECK_THROWS_AS(pin_comoment(p), NoComoment);
}

TEST_CASE("identity problem solves to the identity map") {
  const EmbeddingProblem p = pin_comoment(identity_problem(2));
  const EmbeddingSolution s = solve_embedding(p, 2);
  for (int i = 0; i < 4; ++i) CHECK(s.images[i] == p.source.gen_element(i));
  CHECK(s.certificate.pairs_checked == 16);
  CHECK(s.certificate.classical_ok);
}

TEST_CASE("gl2 embedding into the principal W-algebra with localized free fields") {
  const EmbeddingSolution& s = gl2_solution();
  const EmbeddingProblem& p = s.problem;
  CHECK(s.free_parameters == 0);
  CHECK(p.pinned.size() == 1);
  // Pinning e^1 keeps p out of the comoment image.
  CHECK(s.images[1] == embed_element(Element(Monomial::lattice(1)), p.loc_offset));
  // Charges of (E11, E12, E21, E22).
  CHECK(charge_of(p.target, s.images[0]) == 0);
  CHECK(charge_of(p.target, s.images[1]) == 1);
  CHECK(charge_of(p.target, s.images[2]) == -1);
  CHECK(charge_of(p.target, s.images[3]) == 0);
  CHECK(s.certificate.pairs_checked == 16);
  REQUIRE(s.certificate.injectivity.size() == 4);
  const std::vector<size_t> dims{1, 4, 14, 40};
  for (int w = 0; w <= 3; ++w) CHECK(s.certificate.injectivity[w].second == dims[w]);
  CHECK(s.certificate.classical_ok);
}

TEST_CASE("corrupted coefficient is caught at the perturbed pair") {
  const EmbeddingSolution& s = gl2_solution();
  std::vector<Element> bad = s.images;
  bad[0] += Scalar(RatFuncK(BigRational(1, 7))) * s.problem.words.front().rep;
  try {
    verify_embedding(s.problem, bad, 1);
    FAIL("corruption not detected");
  } catch (const ResidualNonzero& e) {
    CHECK(std::string(e.what()).find("E11") != std::string::npos);
  }
}

TEST_CASE("negating the charge of one generator leaves no solution") {
  EmbeddingProblem p =
      gl_embedding_problem(2, PartitionMu::parse("1,1"), CorootAlpha::parse("1,2"));
  p.grade[2].e_charge = 1;
  CHECK_THROWS_AS(solve_embedding(pin_comoment(p), 1), Unsolvable);
}

TEST_CASE("classical reduction by stages matches the direct reduction") {
  const StagesReport a = stages_check(2, PartitionMu::parse("1,1"), CorootAlpha::parse("1,2"), 3);
  CHECK(a.ok);
  CHECK(a.staged == std::vector<size_t>{1, 1, 3, 5});
  CHECK(a.direct == std::vector<size_t>{1, 1, 3, 5});
  const StagesReport b = stages_check(3, PartitionMu::parse("2,1"), CorootAlpha::parse("1,2"), 3);
  CHECK(b.ok);
  CHECK(b.higher_vanish);
  CHECK(b.staged == b.direct);
  CHECK(b.staged == std::vector<size_t>{1, 1, 3, 6});
  REQUIRE(b.root.has_value());
  // E31: together with f_mu = E21, f_alpha = E13 completes a principal chain.
  CHECK(*b.root == std::make_pair(2, 0));
  // Trivial stage: the target is the source.
  const StagesReport c = stages_check(2, PartitionMu::parse("2"), CorootAlpha{1, 1}, 3);
  CHECK(c.ok);
  CHECK(c.staged == c.direct);
}
