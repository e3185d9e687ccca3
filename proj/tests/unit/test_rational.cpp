#include <doctest.h>

#include "conelab/errors.hpp"
#include "conelab/rational.hpp"

using namespace conelab;

namespace {
RVector rv(std::initializer_list<long> xs) {
  RVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}
}  // namespace

TEST_CASE("parse and print rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational(" 7/-14 ") == Rational(-1, 2));
  CHECK(to_string(Rational(-3, 9)) == "-1/3");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("double conversion is exact") {
  CHECK(exact(0.5) == Rational(1, 2));
  CHECK(exact(-0.375) == Rational(-3, 8));
  CHECK(to_double(exact(0.1)) == 0.1);
}

TEST_CASE("row reduction, rank, nullspace") {
  RMatrix m = RMatrix::from_rows({rv({1, 2, 3}), rv({2, 4, 6}), rv({1, 0, 1})}, 3);
  CHECK(rank(m) == 2);
  const auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  CHECK(is_zero(m * ns[0]));
  CHECK(determinant(m) == 0);
  CHECK_FALSE(inverse(m).has_value());
}

TEST_CASE("inverse and determinant agree") {
  RMatrix m = RMatrix::from_rows({rv({2, 1, 0}), rv({1, 3, 1}), rv({0, 1, 4})}, 3);
  CHECK(determinant(m) == 18);
  const auto inv = inverse(m);
  REQUIRE(inv.has_value());
  CHECK(m * *inv == RMatrix::identity(3));
  CHECK(is_positive_definite(m));
  RMatrix indefinite = RMatrix::from_rows({rv({1, 2}), rv({2, 1})}, 2);
  CHECK_FALSE(is_positive_definite(indefinite));
}

TEST_CASE("solve finds a solution or reports none") {
  RMatrix m = RMatrix::from_rows({rv({1, 1}), rv({1, -1})}, 2);
  const auto x = solve(m, rv({3, 1}));
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 2);
  CHECK((*x)[1] == 1);
  RMatrix singular = RMatrix::from_rows({rv({1, 1}), rv({2, 2})}, 2);
  CHECK_FALSE(solve(singular, rv({1, 3})).has_value());
}

TEST_CASE("primitive scaling") {
  RVector v{Rational(2, 3), Rational(-4, 9), Rational(0)};
  CHECK(primitive(v) == rv({3, -2, 0}));
  CHECK(positively_parallel(v, rv({6, -4, 0})));
  CHECK_FALSE(positively_parallel(v, rv({-6, 4, 0})));
}
