#include <catch2/catch_amalgamated.hpp>

#include "gptbox/rational.hpp"

using namespace gptbox;

TEST_CASE("parse_rational reads integers and fractions in lowest terms", "[rational]") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-3/6") == Rational(-1, 2));
    CHECK(parse_rational("4/-8") == Rational(-1, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("+2/4") == Rational(1, 2));
    CHECK(parse_rational("0/5") == Rational(0));
}

TEST_CASE("parse_rational rejects decimals and malformed input", "[rational]") {
    CHECK_THROWS_AS(parse_rational("0.5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1e3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("1/2/3"), std::invalid_argument);
}

TEST_CASE("fraction strings round-trip exactly", "[rational]") {
    const char* samples[] = {"0/1", "1/2", "-7/3", "22/7", "-1000000000000000000001/3"};
    for (const char* s : samples) {
        const Rational v = parse_rational(s);
        CHECK(to_fraction_string(v) == s);
        CHECK(parse_rational(to_fraction_string(v)) == v);
    }
    CHECK(to_short_string(Rational(8, 4)) == "2");
    CHECK(to_short_string(Rational(-1, 2)) == "-1/2");
}

TEST_CASE("arithmetic stays canonical", "[rational]") {
    const Rational a(1, 6), b(1, 3);
    const Rational s = a + b;
    CHECK(numerator(s) == 1);
    CHECK(denominator(s) == 2);
    CHECK(a - a == 0);
    CHECK(Rational(2, 4) == Rational(1, 2));
    // big intermediate values stay exact
    Rational big(1);
    for (int i = 0; i < 64; ++i) big *= Rational(3, 2);
    Rational back = big;
    for (int i = 0; i < 64; ++i) back /= Rational(3, 2);
    CHECK(back == 1);
}
