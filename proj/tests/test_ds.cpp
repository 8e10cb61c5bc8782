#include "doctest.h"

#include "chiral/ds.hpp"

using namespace chiral;

namespace {

DSComplex make(const char* mu, DSOptions opt = {}) {
  return DSComplex(build_nilpotent(PartitionMu::parse(mu)), opt);
}

std::vector<size_t> ghost_row(const CohomologyTable& t, int g) {
  std::vector<size_t> r;
  for (const auto& w : t.cohomology_dims) r.push_back(w[g]);
  return r;
}

std::vector<size_t> expected(const DSComplex& c, int max_weight) {
  std::vector<BigRational> w;
  for (const auto& s : slice_coordinates(c.grading())) w.push_back(s.weight);
  return slice_character(w, max_weight);
}

}  // namespace

TEST_CASE("gl2 principal differential") {
  DSComplex c = make("2");
  const Presentation& P = c.big();
  const Element want = c.engine().normal_product(c.engine().gen("J12"), c.engine().gen("c12")) -
                       c.engine().gen("c12");
  CHECK(c.differential() == want);
  CHECK(P.gen(P.index("b12")).weight == 0);
  CHECK(P.gen(P.index("c12")).weight == 1);
  CHECK(P.gen(P.index("J21")).weight == 2);
}

TEST_CASE("gl3 principal differential has one trilinear term") {
  DSComplex c = make("3");
  size_t cubic = 0, currents = 0;
  for (const auto& [m, s] : c.differential().terms()) {
    if (m.factors.size() == 3) ++cubic;
    if (m.factors.size() == 2) ++currents;
  }
  CHECK(cubic == 1);
  CHECK(currents == 3);
}

TEST_CASE("differential squares to zero") {
  for (const char* mu : {"2", "3", "2,1"}) {
    DSComplex c = make(mu);
    const DSquaredReport r = c.check_d_squared(std::string(mu) == "2" ? 4 : 3);
    INFO(mu << ": " << r.witness);
    CHECK(r.ok);
  }
}

TEST_CASE("dropping the trilinear term breaks d^2 = 0") {
  DSComplex c = make("3", DSOptions{true});
  const DSquaredReport r = c.check_d_squared(2);
  CHECK(!r.ok);
  CHECK(!r.witness.empty());
}

TEST_CASE("cohomology is concentrated in degree zero") {
  for (const char* mu : {"2", "3", "2,1"}) {
    DSComplex c = make(mu);
    const CohomologyTable t = c.cohomology(3);
    INFO(mu);
    CHECK(t.hbar_homogeneous);
    CHECK(ghost_row(t, 0) == expected(c, 3));
    for (int g = 1; g <= t.max_ghost; ++g) CHECK(ghost_row(t, g) == std::vector<size_t>(4, 0));
  }
  DSComplex c2 = make("2");
  CHECK(ghost_row(c2.cohomology(3), 0) == std::vector<size_t>{1, 1, 3, 5});
}

TEST_CASE("zero nilpotent gives the affine algebra") {
  DSComplex c = make("1,1");
  CHECK(c.ghost_count() == 0);
  const CohomologyTable t = c.cohomology(2);
  CHECK(ghost_row(t, 0) == std::vector<size_t>{1, 4, 14});
}
