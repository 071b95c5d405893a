#include "ngv/rational.hpp"

#include <stdexcept>

#include "doctest.h"
#include "ngv/errors.hpp"

using ngv::Rational;

TEST_CASE("rationals normalize to lowest terms") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-3, -6) == Rational(1, 2));
  CHECK(Rational(3, -6) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(6, 3).to_string() == "2/1");
}

TEST_CASE("arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));
  CHECK(a + (-a) == Rational(0));
}

TEST_CASE("comparison by cross multiplication") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(0));
  CHECK(Rational(7, 5) > Rational(4, 3));
  CHECK(Rational(2, 4) <= Rational(1, 2));
  // Large values where doubles would lose the difference.
  CHECK(Rational(1000000000000000001LL, 1000000000000000000LL) > Rational(1));
}

TEST_CASE("parse accepts p/q and bare integers") {
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("17") == Rational(17));
  CHECK(Rational::parse("9/10") == Rational(9, 10));
  CHECK_THROWS_AS(Rational::parse("a/b"), ngv::DomainError);
  CHECK_THROWS_AS(Rational::parse("1/0"), ngv::DomainError);
  CHECK_THROWS_AS(Rational::parse(""), ngv::DomainError);
}

TEST_CASE("overflow throws instead of wrapping") {
  const Rational huge(1, 1000000000000000000LL);
  Rational acc = huge;
  CHECK_THROWS_AS(
      [&] {
        for (int i = 0; i < 10; ++i) acc = acc * huge;
        return acc;
      }(),
      std::overflow_error);
  CHECK_THROWS_AS(Rational(1, 0), ngv::DomainError);
}

TEST_CASE("division by zero is a domain error") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), ngv::DomainError);
}
