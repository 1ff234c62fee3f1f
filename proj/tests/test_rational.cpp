#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "proprank/errors.hpp"
#include "proprank/rational.hpp"

using namespace proprank;

TEST_CASE("construction normalizes to lowest terms") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(3, 2).numerator() == 3);
  CHECK(Rational(3, 2).denominator() == 2);
  CHECK_THROWS_AS(Rational(1, 0), InvalidInputError);
}

TEST_CASE("scaling a fraction round-trips through normalization") {
  // a/b == (k*a)/(k*b) for a spread of k
  for (long long k : {2LL, 3LL, 7LL, 1000003LL}) {
    CHECK(Rational(9 * k, 24 * k) == Rational(3, 8));
  }
}

TEST_CASE("arithmetic matches hand results and stays exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) - Rational(2, 3) == Rational(-1, 6));
  CHECK(Rational(3, 4) * Rational(2, 9) == Rational(1, 6));
  CHECK(Rational(3, 4) / Rational(9, 2) == Rational(1, 6));
  CHECK_THROWS_AS(Rational(1) / Rational(0), InvalidInputError);

  // 1/3 leaves no rounding residue: 3 * (1/3) is exactly one
  CHECK(Rational(1, 3) * Rational(3) == Rational(1));
}

TEST_CASE("comparisons are exact across denominators") {
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(12, 107) < Rational(4, 13));
  CHECK(Rational(39, 107) > Rational(0));
  CHECK(min(Rational(282, 107), Rational(2)) == Rational(2));
}

TEST_CASE("large intermediates do not overflow") {
  // products on the order of C(25,2)-scale budgets times repeated splits
  Rational x(300);
  for (int i = 0; i < 40; ++i) x *= Rational(6120, 17);
  for (int i = 0; i < 40; ++i) x /= Rational(6120, 17);
  CHECK(x == Rational(300));
}

TEST_CASE("parsing accepts fractions, integers and decimals") {
  CHECK(Rational::parse("3/5") == Rational(3, 5));
  CHECK(Rational::parse("-3/5") == Rational(-3, 5));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("0.6") == Rational(3, 5));
  CHECK(Rational::parse("67.5") == Rational(135, 2));
  CHECK(Rational::parse("67.5") / Rational(300) == Rational(27, 120));
  CHECK_THROWS_AS(Rational::parse("3/"), InvalidInputError);
  CHECK_THROWS_AS(Rational::parse("a/b"), InvalidInputError);
  CHECK_THROWS_AS(Rational::parse("1.2.3"), InvalidInputError);
  CHECK_THROWS_AS(Rational::parse(""), InvalidInputError);
}

TEST_CASE("rendering is p/q or plain integer") {
  CHECK(Rational(9, 4).str() == "9/4");
  CHECK(Rational(-9, 4).str() == "-9/4");
  CHECK(Rational(4).str() == "4");
  CHECK(Rational(0).str() == "0");
}

TEST_CASE("floor_int rounds towards negative infinity") {
  CHECK(floor_int(Rational(9, 10)) == 0);
  CHECK(floor_int(Rational(10, 10)) == 1);
  CHECK(floor_int(Rational(27, 120) * Rational(300)) == 67);
  CHECK(floor_int(Rational(-1, 2)) == -1);
}
