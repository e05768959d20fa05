#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hjdecay/rational.hpp"

using namespace hjd;

TEST_CASE("normalization and exact equality")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(0, 7).den() == 1);
}

TEST_CASE("arithmetic is exact")
{
    const Rational half(1, 2), third(1, 3);
    CHECK(half + third == Rational(5, 6));
    CHECK(half - third == Rational(1, 6));
    CHECK(half * third == Rational(1, 6));
    CHECK(half / third == Rational(3, 2));
    CHECK(-half == Rational(-1, 2));
    CHECK((half < third) == false);
    CHECK(third < half);
}

TEST_CASE("zero denominator and division by zero are rejected")
{
    CHECK_THROWS_AS(Rational(1, 0), invalid_input);
    CHECK_THROWS_AS(Rational(1, 2) / Rational(0), invalid_input);
}

TEST_CASE("overflow is a hard error, not a wrap")
{
    const Rational big(std::int64_t(1) << 62);
    CHECK_THROWS_AS(big * big, numerical_failure);
}

TEST_CASE("string form")
{
    CHECK(Rational(3, 6).str() == "1/2");
    CHECK(Rational(5).str() == "5");
    CHECK(Rational(-7, 3).str() == "-7/3");
}
