#include "doctest.h"

#include "chiral/linalg.hpp"

using namespace chiral;

namespace {
RatFuncK rk(const char* s) { return parse_scalar(s).coeff(0); }
}  // namespace

TEST_CASE("rank over Q(k) is generic") {
  // det = k^2 - 1 vanishes only at special levels
  std::vector<SparseRow<RatFuncK>> m = {{{0, rk("k")}, {1, rk("1")}},
                                        {{0, rk("1")}, {1, rk("k")}}};
  CHECK(rank_of(m) == 2);
  CHECK(bareiss_rank(m, 2) == 2);
  std::vector<SparseRow<RatFuncK>> s = {{{0, rk("k")}, {1, rk("k^2")}},
                                        {{0, rk("1/k")}, {1, rk("1")}},
                                        {{2, rk("1/(k+1)")}}};
  CHECK(rank_of(s) == 2);
  CHECK(bareiss_rank(s, 3) == 2);
}

TEST_CASE("bareiss agrees with rref on a larger matrix") {
  std::vector<SparseRow<RatFuncK>> m;
  for (int i = 0; i < 6; ++i) {
    SparseRow<RatFuncK> r;
    for (int j = 0; j < 6; ++j) {
      const int v = (i * 7 + j * 3) % 5 - 2;
      if (v) r[j] = RatFuncK(PolyQ::k()) * RatFuncK(v) + RatFuncK(i - j);
    }
    m.push_back(r);
  }
  m.push_back(m[0]);
  CHECK(bareiss_rank(m, 6) == rank_of(m));
}

TEST_CASE("nullspace and solve") {
  std::vector<SparseRow<BigRational>> a = {{{0, 1}, {1, 2}, {2, 3}}, {{1, 1}, {2, 1}}};
  const auto ns = nullspace(a, 3);
  REQUIRE(ns.size() == 1);
  for (const auto& row : a) {
    BigRational dot = 0;
    for (const auto& [c, v] : row) {
      auto it = ns[0].find(c);
      if (it != ns[0].end()) dot += v * it->second;
    }
    CHECK(dot == 0);
  }
  std::vector<BigRational> x;
  CHECK(solve_linear(a, {BigRational(6), BigRational(2)}, 3, x));
  CHECK(x[0] + 2 * x[1] + 3 * x[2] == 6);
  std::vector<SparseRow<BigRational>> inc = {{{0, 1}}, {{0, 2}}};
  CHECK(!solve_linear(inc, {BigRational(1), BigRational(1)}, 1, x));
}
