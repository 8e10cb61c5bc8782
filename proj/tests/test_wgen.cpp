#include "doctest.h"

#include "chiral/basis.hpp"
#include "chiral/library.hpp"
#include "chiral/wgen.hpp"

using namespace chiral;

namespace {
GoodGrading grading(const char* mu) { return build_nilpotent(PartitionMu::parse(mu)); }

std::vector<BigRational> weights_of(const std::vector<WGenerator>& g) {
  std::vector<BigRational> w;
  for (const auto& x : g) w.push_back(x.weight);
  return w;
}

// Untwisted weights J:1, b:1, c:0 make every bracket of the full complex homogeneous.
std::vector<BigRational> untwisted(const Presentation& p) {
  std::vector<BigRational> w;
  for (const auto& g : p.generators) w.push_back(g.name[0] == 'c' ? 0 : 1);
  return w;
}

const RatFuncK k = RatFuncK::k();
}  // namespace

TEST_CASE("generator weights") {
  DSComplex a(grading("2")), b(grading("1,1")), c(grading("3"));
  CHECK(weights_of(extract_generators(a, 3)) == std::vector<BigRational>{1, 2});
  CHECK(weights_of(extract_generators(b, 2)) == std::vector<BigRational>{1, 1, 1, 1});
  CHECK(weights_of(extract_generators(c, 3)) == std::vector<BigRational>{1, 2, 3});
}

TEST_CASE("gl2 principal Virasoro") {
  DSComplex ds(grading("2"));
  const auto v = identify_virasoro(ds);
  REQUIRE(v);
  // sl2 principal value plus one for the trace current
  const RatFuncK expect = RatFuncK(2) - RatFuncK(6) * (k + 1) * (k + 1) / (k + 2);
  CHECK(v->c == expect);
  for (long k0 : {1, 3, 5})
    CHECK(mode_central_charge(ds.big(), v->L, k0, untwisted(ds.big())) == expect.eval(k0));
}

TEST_CASE("gl3 principal Virasoro") {
  DSComplex ds(grading("3"));
  const auto v = identify_virasoro(ds);
  REQUIRE(v);
  const RatFuncK expect = RatFuncK(3) - RatFuncK(24) * (k + 2) * (k + 2) / (k + 3);
  CHECK(v->c == expect);
  CHECK(mode_central_charge(ds.big(), v->L, 3, untwisted(ds.big())) == expect.eval(3));
}

TEST_CASE("Sugawara for gl2") {
  DSComplex ds(grading("1,1"));
  const auto v = identify_virasoro(ds);
  REQUIRE(v);
  CHECK(v->c == RatFuncK(3) * k / (k + 2) + RatFuncK(1));
}

TEST_CASE("commutative presentation has no Virasoro element") {
  Presentation p = beta_gamma(1);
  p.brackets.clear();
  Engine eng(p);
  BasisQuery q;
  q.weight = 2;
  q.length_cutoff = 3;
  std::vector<Element> cands;
  for (const auto& m : enumerate_basis(p, q)) cands.push_back(Element(m));
  CHECK_FALSE(find_virasoro(eng, cands, {{eng.gen("beta"), 1}}));
}
