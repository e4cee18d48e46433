#include <catch2/catch_amalgamated.hpp>
#include <plaus/rational.hpp>

using namespace plaus;

TEST_CASE("rationals canonicalize to lowest terms", "[rational]") {
  CHECK(make_rational(2, 4) == make_rational(1, 2));
  CHECK(make_rational(-2, 4) == make_rational(-1, 2));
  CHECK(make_rational(3, -6) == make_rational(-1, 2));
  CHECK(make_rational(0, 7) == 0);
  CHECK(make_rational(0, 7).get_den() == 1);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("arithmetic stays canonical", "[rational]") {
  Rational a = make_rational(1, 6);
  Rational b = make_rational(1, 3);
  CHECK(a + b == make_rational(1, 2));
  CHECK(Rational(a + b).get_den() == 2);
  CHECK(a - a == 0);
  CHECK(a * b == make_rational(1, 18));
  CHECK(a / b == make_rational(1, 2));
  CHECK(make_rational(3, 7) < make_rational(4, 9));
}

TEST_CASE("text form is p/q with unit denominators omitted", "[rational]") {
  CHECK(to_string(make_rational(1, 2)) == "1/2");
  CHECK(to_string(make_rational(-3, 7)) == "-3/7");
  CHECK(to_string(make_rational(5)) == "5");
  CHECK(to_string(Rational(0)) == "0");
}

TEST_CASE("parsing round-trips and rejects junk", "[rational]") {
  for (const char* text : {"1/2", "-3/7", "5", "0", "22/7", "-1"})
    CHECK(to_string(rational_from_string(text)) == text);
  CHECK(rational_from_string("2/4") == make_rational(1, 2));
  CHECK(rational_from_string("+3") == 3);
  CHECK_THROWS_AS(rational_from_string(""), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_string("x"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1.5"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/-2"), ParseError);
  CHECK_THROWS_AS(rational_from_string("1/"), ParseError);
  CHECK_THROWS_AS(rational_from_string("/2"), ParseError);
}

TEST_CASE("integrality test", "[rational]") {
  CHECK(is_integer(make_rational(4, 2)));
  CHECK(!is_integer(make_rational(1, 2)));
  CHECK(is_integer(Rational(0)));
}

TEST_CASE("big values stay exact", "[rational]") {
  Rational tiny = make_rational(1, 3);
  Rational acc(0);
  for (int i = 0; i < 300; ++i) acc += tiny;
  CHECK(acc == 100);
  Rational huge = rational_from_string("123456789012345678901234567890/7");
  CHECK(to_string(huge * 7) == "123456789012345678901234567890");
}
