#include "doctest.h"

#include "chiral/ds.hpp"
#include "chiral/engine.hpp"
#include "chiral/errors.hpp"
#include "chiral/io.hpp"
#include "chiral/library.hpp"
#include "chiral/lie.hpp"

using namespace chiral;

TEST_CASE("element expressions parse to the expected elements") {
  const Presentation p = affine_gl(2);
  const Element e11 = p.gen_element("E11"), e22 = p.gen_element("E22");
  CHECK(parse_element(p, "E11") == e11);
  CHECK(parse_element(p, "1/2*E11 - 3*E22") ==
        Scalar(RatFuncK(BigRational(1, 2))) * e11 + Scalar(-3) * e22);
  CHECK(parse_element(p, "(h*(k + 1))*D^2(E11)") ==
        Element(Monomial::single(p.index("E11"), 2), Scalar::hbar() * Scalar(RatFuncK::k() + RatFuncK(1))));
  CHECK(parse_element(p, "k^-1*h^2") == Element::vacuum(Scalar::hbar(2) / Scalar::k()));
  Engine eng(p);
  // Non-canonical normal products are ordered by the engine.
  CHECK(parse_element(p, ":E22 E11:", &eng) == eng.normal_product(e22, e11));
  CHECK(parse_element(p, "D(:E11 E22:)", &eng) == eng.derivative(eng.normal_product(e11, e22)));
}

TEST_CASE("element parse errors carry a column") {
  const Presentation p = affine_gl(2);
  try {
    parse_element(p, "E11 + X9");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 7);
  }
  CHECK_THROWS_AS(parse_element(p, ":E22 E11:"), ParseError);
  CHECK_THROWS_AS(parse_element(p, "E11*E22"), ParseError);
  CHECK_THROWS_AS(parse_element(p, "E11/h"), ParseError);
  CHECK_THROWS_AS(parse_element(p, "exp(1)"), ParseError);
}

TEST_CASE("formatted elements round-trip without an engine") {
  const GoodGrading g = build_nilpotent(PartitionMu::parse("2"));
  DSComplex ds(g);
  const Presentation t = tensor(ds.big(), localized(1));
  Engine eng(t);
  const int off = static_cast<int>(ds.big().size());
  const Element p = embed_element(localized(1).gen_element("p"), off);
  const Element dE = eng.derivative(embed_element(Element(Monomial::lattice(1)), off));
  const Element x = eng.normal_product(
      p, eng.normal_product(dE, embed_element(Element(Monomial::lattice(-3)), off)));
  const Element y = Scalar::hbar(2) * Scalar(RatFuncK::k() / RatFuncK(7)) * x +
                    eng.normal_product(ds.engine().gen("b12"), ds.engine().gen("c12"));
  CHECK(parse_element(t, format_element(t, y)) == y);
}

TEST_CASE("shipped presentations round-trip through files") {
  const std::vector<Presentation> all = {beta_gamma(1), beta_gamma(2), bc_system(1),
                                         bc_system(2),  heisenberg(),  affine_gl(2),
                                         affine_gl(3),  localized(1),  localized(2)};
  for (const auto& p : all) {
    const std::string a = presentation_to_json(p);
    const Presentation q = presentation_from_json(a);
    CHECK(presentation_to_json(q) == a);
    CHECK(q.brackets == p.brackets);
  }
}

TEST_CASE("malformed presentation files report positions") {
  try {
    presentation_from_json("{\n  \"name\": \"x\",\n  \"generators\": [ oops ]\n}\n");
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  CHECK_THROWS_AS(presentation_from_json("{\"name\": \"x\"}"), ParseError);
  CHECK_THROWS_AS(
      presentation_from_json(
          R"({"name":"x","generators":[{"name":"a"}],"brackets":[{"pair":["a","z"],"terms":[]}]})"),
      ParseError);
}

TEST_CASE("Poisson files round-trip, including log coordinates") {
  for (const auto& p : {jet_lift(kks_gl(2), true), jet_lift(cotangent_affine(2)),
                        classical_limit_log(localized(1))}) {
    const std::string a = poisson_to_json(p);
    CHECK(is_poisson_file(a));
    const PoissonPresentation q = poisson_from_json(a);
    CHECK(poisson_to_json(q) == a);
    CHECK(q.brackets == p.brackets);
    CHECK(q.exponent == p.exponent);
  }
}

TEST_CASE("shipped data files match the built-in presentations") {
  const std::string d = std::string(CHIRAL_DATA_DIR) + "/";
  const std::vector<std::pair<std::string, Presentation>> chiral_files = {
      {"beta_gamma1", beta_gamma(1)}, {"beta_gamma2", beta_gamma(2)}, {"bc1", bc_system(1)},
      {"bc2", bc_system(2)},          {"heisenberg", heisenberg()},   {"affine_gl2", affine_gl(2)},
      {"affine_gl3", affine_gl(3)},   {"localized1", localized(1)},   {"localized2", localized(2)}};
  for (const auto& [name, p] : chiral_files) {
    INFO(name);
    CHECK(read_file(d + name + ".json") == presentation_to_json(p));
  }
  CHECK(read_file(d + "kks_gl2.json") == poisson_to_json(jet_lift(kks_gl(2))));
  CHECK(read_file(d + "cotangent_A1.json") == poisson_to_json(jet_lift(cotangent_affine(1))));
  CHECK(read_file(d + "cotangent_A2.json") == poisson_to_json(jet_lift(cotangent_affine(2))));
  // The corrupted fixture differs from gl2 in one bracket only.
  const Presentation bad = presentation_from_json(read_file(d + "fixtures/corrupt_bracket.json"));
  const Presentation good = affine_gl(2);
  int diff = 0;
  for (const auto& [k, l] : good.brackets) diff += !(bad.bracket(k.first, k.second) == l);
  CHECK(diff == 1);
  CHECK_THROWS_AS(presentation_from_json(read_file(d + "fixtures/malformed.json")), ParseError);
}
