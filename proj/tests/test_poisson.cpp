#include "doctest.h"

#include "chiral/engine.hpp"
#include "chiral/errors.hpp"
#include "chiral/library.hpp"
#include "chiral/poisson.hpp"

using namespace chiral;

namespace {
std::vector<size_t> casimir_dims(const FinitePoisson& f, int half_steps) {
  JetAlgebra alg(jet_lift(f));
  std::vector<size_t> d;
  for (const auto& r : casimir_search(alg, BigRational(half_steps, 2), BigRational(1, 2)))
    d.push_back(r.classes.size());
  return d;
}
}  // namespace

TEST_CASE("jet bracket on quadratic elements of the cotangent jet algebra") {
  JetAlgebra alg(jet_lift(cotangent_affine(1)));
  const JetPoly x = alg.var(0), y = alg.var(1);
  // {x_l xy} = x, {xy_l xy} = xy - xy = 0 at lambda^0 plus nothing else.
  const JetLambda a = alg.bracket(x, alg.mul(x, y));
  REQUIRE(a.size() == 1);
  CHECK(a[0] == x);
  // {x_l y'} = lambda, {x'_l y} = -lambda.
  CHECK(alg.bracket(x, alg.var(1, 1)) == JetLambda{JetPoly{}, JetPoly::one()});
  CHECK(alg.bracket(alg.var(0, 1), y) == JetLambda{JetPoly{}, JetPoly::one(RatFuncK(-1))});
  CHECK(alg.derivative(alg.mul(x, x)) == RatFuncK(2) * alg.mul(x, alg.var(0, 1)));
}

TEST_CASE("odd jets anticommute") {
  FinitePoisson f;
  Generator b{"b", true, 1, -1}, c{"c", true, 0, 1};
  f.coordinates = {b, c};
  f.bracket[{0, 1}] = JetPoly::one();
  f.bracket[{1, 0}] = JetPoly::one();
  JetAlgebra alg(jet_lift(f));
  const JetPoly bb = alg.var(0), cc = alg.var(1);
  CHECK(alg.mul(bb, bb).is_zero());
  CHECK(alg.mul(bb, cc) == RatFuncK(-1) * alg.mul(cc, bb));
  CHECK(!check_vertex_poisson(alg));
}

TEST_CASE("classical limit of the affine algebra is the KKS jet lift") {
  const PoissonPresentation cl = classical_limit(affine_gl(2));
  const PoissonPresentation kks = jet_lift(kks_gl(2));
  CHECK(cl.brackets == kks.brackets);
  JetAlgebra with_level(jet_lift(kks_gl(2), true));
  CHECK(!check_vertex_poisson(with_level));
}

TEST_CASE("classical limit rejects h-free brackets") {
  CHECK_THROWS_AS(classical_limit(virasoro(Scalar(1))), NotAlmostCommutative);
}

TEST_CASE("non-Jacobi finite bracket is rejected") {
  FinitePoisson f;
  for (const char* n : {"x", "y", "z"}) f.coordinates.push_back(Generator{n});
  f.bracket[{0, 1}] = JetPoly(Monomial::single(1));
  f.bracket[{1, 0}] = JetPoly(Monomial::single(1), RatFuncK(-1));
  f.bracket[{1, 2}] = JetPoly(Monomial::single(0));
  f.bracket[{2, 1}] = JetPoly(Monomial::single(0), RatFuncK(-1));
  CHECK_THROWS_AS(jet_lift(f), NotPoisson);
}

TEST_CASE("jet bracket matches the leading quantum bracket on composites") {
  Engine eng(beta_gamma(1));
  JetAlgebra alg(classical_limit(beta_gamma(1)));
  const Element b = eng.gen("beta"), g = eng.gen("gamma");
  const std::vector<Element> samples = {
      eng.normal_product(b, g), eng.normal_product(b, eng.derivative(g)),
      eng.normal_product(eng.derivative(b), eng.normal_product(g, g)),
      eng.normal_product(b, eng.normal_product(b, eng.derivative(g, 2)))};
  for (const auto& u : samples)
    for (const auto& v : samples) {
      const LambdaPoly q = eng.bracket(u, v);
      JetLambda expect;
      for (int j = 0; j <= q.degree(); ++j)
        lambda_add(expect, j,
                   classical_limit(q.coeff(j).map_coeffs([](const Scalar& s) {
                     return s.divide_hbar(1);
                   })));
      CHECK(alg.bracket(classical_limit(u), classical_limit(v)) == expect);
    }
}

TEST_CASE("log coordinates reproduce the leading bracket of localized free fields") {
  const Presentation loc = localized(1);
  Engine eng(loc);
  JetAlgebra alg(classical_limit_log(loc));
  CHECK_FALSE(check_vertex_poisson(alg).has_value());
  const Element p = eng.gen("p"), dE = eng.derivative(Element(Monomial::lattice(1)));
  const Element inv(Monomial::lattice(-1));
  const std::vector<Element> samples = {
      Element(Monomial::lattice(1)), inv, eng.normal_product(dE, inv),
      eng.normal_product(p, inv), eng.normal_product(p, eng.normal_product(p, inv)),
      eng.normal_product(eng.derivative(p), Element(Monomial::lattice(2)))};
  auto cl = [&](const Element& e) { return classical_limit_log(loc, alg, e); };
  for (const auto& u : samples)
    for (const auto& v : samples) {
      const LambdaPoly q = eng.bracket(u, v);
      JetLambda expect;
      for (int j = 0; j <= q.degree(); ++j)
        lambda_add(expect, j, cl(q.coeff(j).map_coeffs([](const Scalar& s) {
                     return s.divide_hbar(1);
                   })));
      const JetLambda got = alg.bracket(cl(u), cl(v));
      std::string dbg;
      for (size_t j = 0; j < std::max(got.size(), expect.size()); ++j)
        dbg += " | l^" + std::to_string(j) + ": " +
               (j < got.size() ? format_jet(alg.presentation(), got[j]) : "0") + " vs " +
               (j < expect.size() ? format_jet(alg.presentation(), expect[j]) : "0");
      INFO(format_jet(alg.presentation(), cl(u)) << " , " << format_jet(alg.presentation(), cl(v)) << dbg);
      CHECK(got == expect);
    }
}

TEST_CASE("Casimirs of cotangent jet algebras are the constants") {
  CHECK(casimir_dims(cotangent_affine(1), 6) == std::vector<size_t>{1, 0, 0, 0, 0, 0, 0});
  CHECK(casimir_dims(cotangent_affine(2), 6) == std::vector<size_t>{1, 0, 0, 0, 0, 0, 0});
}

TEST_CASE("zero bracket: every class is a Casimir") {
  CHECK(casimir_dims(zero_poisson(2), 6) == std::vector<size_t>{1, 2, 3, 4, 6, 8, 13});
}
