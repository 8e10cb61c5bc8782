#include "doctest.h"

#include "chiral/errors.hpp"
#include "chiral/polysys.hpp"

using namespace chiral;

namespace {
MPoly x(int n, int i) { return MPoly::var(n, i); }
MPoly c(int n, long v) { return MPoly::constant(n, RatFuncK(v)); }
const RatFuncK k = RatFuncK::k();
}  // namespace

TEST_CASE("linear system") {
  const auto s = solve_polynomial_system({x(2, 0) + x(2, 1) - c(2, 3), x(2, 0) - x(2, 1) - c(2, 1)}, 2);
  CHECK(s.values == std::vector<RatFuncK>{2, 1});
  CHECK(s.free_parameters == 0);
}

TEST_CASE("staged substitution over Q(k)") {
  const MPoly kk = MPoly::constant(2, k);
  const auto s = solve_polynomial_system({x(2, 0) * x(2, 1) - c(2, 1), x(2, 0) - kk}, 2);
  CHECK(s.values == std::vector<RatFuncK>{k, RatFuncK(1) / k});
}

TEST_CASE("free parameters are set to zero") {
  const auto s = solve_polynomial_system({x(3, 0) - x(3, 2)}, 3);
  CHECK(s.free_parameters == 2);
  CHECK(s.values == std::vector<RatFuncK>{0, 0, 0});
}

TEST_CASE("lex Groebner basis") {
  // (x^2 - y, xy - 1) has lex basis {y^3 - 1, x - y^2}
  const auto gb = groebner({x(2, 0) * x(2, 0) - x(2, 1), x(2, 0) * x(2, 1) - c(2, 1)});
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == x(2, 1) * x(2, 1) * x(2, 1) - c(2, 1));
  CHECK(gb[1] == x(2, 0) - x(2, 1) * x(2, 1));
}

TEST_CASE("Groebner supplies hidden linear members") {
  // xy = 1, x^2 = y^2, x^2 = x has the single solution (1, 1) and no linear generator
  const MPoly X = x(2, 0), Y = x(2, 1);
  const auto s = solve_polynomial_system({X * Y - c(2, 1), X * X - Y * Y, X * X - X}, 2);
  CHECK(s.values == std::vector<RatFuncK>{1, 1});
}

TEST_CASE("inconsistent and irreducibly nonlinear systems") {
  CHECK_THROWS_AS(solve_polynomial_system({x(1, 0) * x(1, 0) - c(1, 1), x(1, 0) - c(1, 2)}, 1),
                  Unsolvable);
  CHECK_THROWS_AS(solve_polynomial_system({x(1, 0) * x(1, 0) - c(1, 2)}, 1), Unsolvable);
}

TEST_CASE("branching on a quadratic with roots in Q(k)") {
  const MPoly X = x(2, 0), Y = x(2, 1);
  const MPoly k2 = MPoly::constant(2, k + RatFuncK(2));
  // x (x - (k+2)) = 0 and x y = 1: only the nonzero root survives
  const auto s = solve_polynomial_system({X * X - k2 * X, X * Y - c(2, 1)}, 2);
  CHECK(s.values == std::vector<RatFuncK>{k + RatFuncK(2), RatFuncK(1) / (k + RatFuncK(2))});
}
