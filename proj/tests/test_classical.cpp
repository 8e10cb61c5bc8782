#include "doctest.h"

#include "chiral/classical.hpp"

using namespace chiral;

namespace {
GoodGrading grading(const char* mu) { return build_nilpotent(PartitionMu::parse(mu)); }
}  // namespace

TEST_CASE("classical differential squares to zero") {
  for (auto [mu, w] : {std::pair{"2", 4}, {"3", 3}, {"2,1", 3}}) {
    ClassicalDS c(grading(mu));
    const auto rep = c.check_d_squared(w);
    CHECK_MESSAGE(rep.ok, mu << ": " << rep.witness);
  }
}

TEST_CASE("classical cohomology of gl2 principal") {
  ClassicalDS c(grading("2"));
  const auto t = c.cohomology(3);
  std::vector<size_t> row0;
  for (int w = 0; w <= 3; ++w) {
    row0.push_back(t.cohomology_dims[w][0]);
    for (size_t g = 1; g < t.cohomology_dims[w].size(); ++g) CHECK(t.cohomology_dims[w][g] == 0);
  }
  CHECK(row0 == std::vector<size_t>{1, 1, 3, 5});
}

TEST_CASE("quantum matrices at h = 0 equal the classical ones") {
  for (auto [mu, w] : {std::pair{"2", 4}, {"3", 3}, {"2,1", 3}}) {
    DSComplex q(grading(mu));
    ClassicalDS c(grading(mu));
    const auto rep = classical_compare(q, c, w);
    CHECK_MESSAGE(rep.ok, mu << ": " << rep.witness);
    CHECK(rep.cells > 0);
  }
}

TEST_CASE("mirrored grading convention is detected") {
  DSComplex q(grading("2"));
  ClassicalDS c(mirrored(grading("2")));
  const auto rep = classical_compare(q, c, 2);
  CHECK_FALSE(rep.ok);
  CHECK(!rep.witness.empty());
}
