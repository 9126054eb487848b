#include <doctest.h>

#include "chabauty/errors.hpp"
#include "chabauty/exact.hpp"

using namespace chabauty;

TEST_SUITE("exact") {

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == Rational(3) / 4);
  CHECK(parse_rational("-1.25") == Rational(-5) / 4);
  CHECK(parse_rational("3e-2") == Rational(3) / 100);
  CHECK(parse_rational(" 7 ") == Rational(7));
  CHECK(to_string(Rational(6) / 4) == "3/2");
  CHECK(to_string(Rational(-2)) == "-2");
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
}

TEST_CASE("rational gcd") {
  CHECK(rational_gcd(Rational(1) / 2, Rational(1) / 3) == Rational(1) / 6);
  CHECK(rational_gcd(Rational(4), Rational(6)) == Rational(2));
  CHECK(rational_gcd(Rational(0), Rational(-3) / 5) == Rational(3) / 5);
  CHECK(rational_gcd(Rational(0), Rational(0)) == 0);
}

TEST_CASE("squarefree split") {
  CHECK(squarefree_split(12) == std::pair<std::uint64_t, std::uint64_t>{2, 3});
  CHECK(squarefree_split(49) == std::pair<std::uint64_t, std::uint64_t>{7, 1});
  CHECK(squarefree_split(30) == std::pair<std::uint64_t, std::uint64_t>{1, 30});
}

TEST_CASE("surds") {
  SurdNumber r2 = SurdNumber::parse("sqrt(2)");
  CHECK((r2 * r2) == SurdNumber(2));
  CHECK(SurdNumber::parse("sqrt(8)") == SurdNumber::sqrt_of(2, 2));
  SurdNumber x = SurdNumber::parse("1/2 + 3*sqrt(3)/4");
  CHECK(x.to_double() == doctest::Approx(0.5 + 3 * std::sqrt(3.0) / 4).epsilon(1e-15));
  CHECK((x - x).is_zero());
  CHECK(SurdNumber::parse("sqrt(2) - sqrt(3)").sign() == -1);
  CHECK(SurdNumber::parse("3/2").is_rational());
  CHECK_FALSE(r2.is_rational());
  CHECK_THROWS_AS(SurdNumber::parse("sqrt(-1)"), ParseError);
}

}
