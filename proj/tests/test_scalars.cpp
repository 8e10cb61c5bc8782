#include "doctest.h"

#include "chiral/errors.hpp"
#include "chiral/scalars.hpp"

using namespace chiral;

namespace {
Scalar s(const char* text) { return parse_scalar(text); }

// Rebuilds a Scalar from the k-specialized hbar coefficients.
Scalar eval_scalar(const Scalar& v, int k0) {
  Scalar r;
  const auto c = v.eval_at_k(k0);
  for (size_t i = 0; i < c.size(); ++i) r += Scalar::term(RatFuncK(c[i]), static_cast<int>(i));
  return r;
}
}  // namespace

TEST_CASE("field operations") {
  CHECK(s("(k+1)*(k-1)") == s("k^2-1"));
  CHECK(s("h*k") + s("h") == Scalar::hbar() * s("k+1"));
  CHECK_THROWS_AS(Scalar(1) / Scalar::hbar(), NotAUnit);
  CHECK(s("1/(k+2)") * s("k+2") == Scalar(1));
}

TEST_CASE("normalize") {
  const PolyQ k = PolyQ::k();
  CHECK(RatFuncK::normalize(k * k - PolyQ(1), k + PolyQ(1)) == RatFuncK(k - PolyQ(1)));
  CHECK(RatFuncK::normalize(k.scaled(2), PolyQ(4)) == RatFuncK(k.scaled(BigRational(1, 2))));
  CHECK(RatFuncK::normalize(k + PolyQ(2), k.scaled(2) + PolyQ(4)) == RatFuncK(BigRational(1, 2)));
  CHECK_THROWS_AS(RatFuncK::normalize(k, PolyQ(0)), ZeroDenominator);
  const RatFuncK r = RatFuncK::normalize(k + PolyQ(2), k.scaled(3));
  CHECK(r.den().lead() == 1);
  CHECK(RatFuncK::normalize(r.num(), r.den()) == r);
}

TEST_CASE("eval at k") {
  CHECK(s("(k+2)/k").eval_at_k(3) == std::vector<BigRational>{BigRational(5, 3)});
  CHECK_THROWS_AS(s("1/(k+2)").eval_at_k(-2), PoleAtLevel);
  CHECK(s("h^2*k").eval_at_k(0).empty());
}

TEST_CASE("hbar specialization") {
  CHECK(s("h^2*k + h + 3").hbar_specialize(0) == RatFuncK(3));
  CHECK(s("h^2*k + h + 3").hbar_specialize(1) == RatFuncK(PolyQ::k() + PolyQ(4)));
  CHECK(Scalar().hbar_specialize(1).is_zero());
}

TEST_CASE("field axioms on random triples") {
  const char* pool[] = {"k", "1/(k+1)", "(k^2-3)/(2*k+5)", "7/3", "-k^3+k", "(k-1)/(k+1)^2"};
  for (const char* a : pool)
    for (const char* b : pool)
      for (const char* c : pool) {
        const Scalar x = s(a), y = s(b), z = s(c);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x + y) - y == x);
      }
}

TEST_CASE("eval commutes with arithmetic") {
  const Scalar x = s("(k^2+1)/(k-2)"), y = s("h*(k+5) + 1/(3*k)");
  for (int k0 : {1, 3, 7}) {
    const auto at = [&](const Scalar& v) { return Scalar(0) + eval_scalar(v, k0); };
    CHECK(at(x * y) == at(x) * at(y));
    CHECK(at(x + y) == at(x) + at(y));
  }
}

TEST_CASE("truncation") {
  const Scalar a = s("1 + h").with_truncation(1);
  CHECK((a * a).hbar_degree() == 1);
}

TEST_CASE("parse errors carry a column") {
  try {
    s("k + * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column == 5);
  }
}
