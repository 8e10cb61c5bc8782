#include "doctest.h"

#include <algorithm>

#include "chiral/errors.hpp"
#include "chiral/lie.hpp"

using namespace chiral;

namespace {
std::vector<BigRational> slice_weights(const GoodGrading& g) {
  std::vector<BigRational> w;
  for (const auto& s : slice_coordinates(g)) w.push_back(s.weight);
  std::sort(w.begin(), w.end());
  return w;
}
}  // namespace

TEST_CASE("gl2 principal") {
  const GoodGrading g = build_nilpotent(PartitionMu::parse("2"));
  CHECK(g.x == std::vector<BigRational>{1, -1});
  CHECK(g.f == unit(2, 1, 0));
  CHECK(g.e == unit(2, 0, 1));
  CHECK(g.positive_units() == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(chi(g, 0, 1) == 1);
  CHECK(slice_weights(g) == std::vector<BigRational>{1, 2});
}

TEST_CASE("zero nilpotent") {
  const GoodGrading g = build_nilpotent(PartitionMu::parse("1,1"));
  CHECK(g.f == zero_mat(2));
  CHECK(g.positive_units().empty());
  CHECK(slice_weights(g) == std::vector<BigRational>{1, 1, 1, 1});
}

TEST_CASE("gl3 gradings") {
  const GoodGrading g3 = build_nilpotent(PartitionMu::parse("3"));
  CHECK(g3.positive_units() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}});
  CHECK(chi(g3, 0, 1) == 1);
  CHECK(chi(g3, 1, 2) == 1);
  CHECK(chi(g3, 0, 2) == 0);
  CHECK(slice_weights(g3) == std::vector<BigRational>{1, 2, 3});

  const GoodGrading g21 = build_nilpotent(PartitionMu::parse("2,1"));
  CHECK(g21.x == std::vector<BigRational>{BigRational(2, 3), BigRational(-4, 3), BigRational(2, 3)});
  CHECK(g21.positive_units().size() == 2);
  int dims = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const BigRational d = g21.x[a] - g21.x[b];
      CHECK(d.get_den() == 1);
      ++dims;
    }
  CHECK(dims == 9);
  const auto w = slice_weights(g21);
  CHECK(w.size() == 5);
  CHECK(std::count(w.begin(), w.end(), BigRational(1)) == 3);
}

TEST_CASE("coroot addition") {
  CHECK(coroot_add(PartitionMu::parse("1,1"), CorootAlpha::parse("1,2"), 2) == PartitionMu::parse("2"));
  CHECK(coroot_add(PartitionMu::parse("2,1"), CorootAlpha::parse("1,2"), 3) == PartitionMu::parse("3"));
  CHECK_THROWS_AS(coroot_add(PartitionMu::parse("2,2"), CorootAlpha::parse("2,3"), 3), NotDominant);
  CHECK_THROWS_AS(PartitionMu::parse("1,2"), UsageError);
  CHECK_THROWS_AS(CorootAlpha::parse("2,1"), UsageError);
}

TEST_CASE("slice characters") {
  CHECK(slice_character({1, 2}, 3) == std::vector<size_t>{1, 1, 3, 5});
  CHECK(slice_character({1, 2, 3}, 3) == std::vector<size_t>{1, 1, 3, 6});
  CHECK(slice_character({1, 1, 1, 1}, 2) == std::vector<size_t>{1, 4, 14});
  CHECK(slice_character({}, 2) == std::vector<size_t>{1, 0, 0});
}
