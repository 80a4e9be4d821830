#include "polieq/rational.hpp"

#include <doctest.h>

#include <vector>

using namespace polieq;

TEST_CASE("parse_rational accepts integers and fractions exactly") {
  CHECK(parse_rational("0") == 0);
  CHECK(parse_rational("-12") == -12);
  CHECK(parse_rational("+3") == 3);
  CHECK(parse_rational("355/113") == Rational(355, 113));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("-2/4") == Rational(-1, 2));
  CHECK(parse_rational("123456789012345678901234567890") > Rational(1e29));
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", "1.5", "1/0", "1/-2", " 1", "1 ", "a", "--1", "1/", "/2", "1e3", "+", "3/+2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), std::invalid_argument);
  }
}

TEST_CASE("to_string is canonical and round-trips") {
  CHECK(to_string(Rational(355, 113)) == "355/113");
  CHECK(to_string(Rational(4, 2)) == "2");
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  for (const char* s : {"0", "-7", "22/7", "-1/3"}) CHECK(to_string(parse_rational(s)) == s);
}

TEST_CASE("common_denominator and to_int64") {
  const std::vector<Rational> v{Rational(1, 4), Rational(5, 6), Rational(2)};
  CHECK(common_denominator(v) == 12);
  CHECK(common_denominator(std::vector<Rational>{}) == 1);
  CHECK(to_int64(Integer(-42)) == -42);
  CHECK_THROWS_AS(to_int64(Integer("100000000000000000000")), std::overflow_error);
}
