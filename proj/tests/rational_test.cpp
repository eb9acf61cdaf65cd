#include <doctest.h>

#include <mixedspec/rational.hpp>

#include <cstdint>
#include <stdexcept>

using mixedspec::Rational;
using mixedspec::checked_lcm;

TEST_CASE("construction reduces and normalizes the sign") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-6, 4) == Rational(-3, 2));
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(-6, -4) == Rational(3, 2));
  CHECK(Rational(0, 7) == Rational(0, 1));
  CHECK(Rational(3, 2).den() > 0);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("parse accepts p and p/q only") {
  CHECK(Rational::parse("3") == Rational(3, 1));
  CHECK(Rational::parse("-3") == Rational(-3, 1));
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("6/8") == Rational(3, 4));

  CHECK_FALSE(Rational::parse("").has_value());
  CHECK_FALSE(Rational::parse("1.5").has_value());
  CHECK_FALSE(Rational::parse("3/").has_value());
  CHECK_FALSE(Rational::parse("/4").has_value());
  CHECK_FALSE(Rational::parse("3/4/5").has_value());
  CHECK_FALSE(Rational::parse("a/4").has_value());
  CHECK_FALSE(Rational::parse("3 /4").has_value());
  CHECK_FALSE(Rational::parse("3/0").has_value());
  CHECK_FALSE(Rational::parse("+3").has_value());
}

TEST_CASE("arithmetic stays exact") {
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) - Rational(1, 3) == Rational(1, 6));
  CHECK(Rational(2, 3) * Rational(9, 4) == Rational(3, 2));
  CHECK(-Rational(3, 4) == Rational(-3, 4));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_FALSE(Rational(1, 2) < Rational(1, 2));
  // reduction before the narrowing multiply: this would overflow naively
  CHECK(Rational(1, INT64_C(3037000499)) * Rational(INT64_C(3037000499), 1) ==
        Rational(1, 1));
}

TEST_CASE("overflow is an error, not a wraparound") {
  const Rational big(INT64_C(0x4000000000000000), 1);
  CHECK_THROWS_AS(big + big, std::overflow_error);
  CHECK_THROWS_AS(big * Rational(2, 1), std::overflow_error);
}

TEST_CASE("floor_mod lands in [0, m)") {
  CHECK(Rational(7, 2).floor_mod(2) == Rational(3, 2));
  CHECK(Rational(-1, 2).floor_mod(2) == Rational(3, 2));
  CHECK(Rational(4, 1).floor_mod(2) == Rational(0, 1));
  CHECK(Rational(-9, 4).floor_mod(2) == Rational(7, 4));
  CHECK(Rational(15, 4).floor_mod(2) == Rational(7, 4));
  // exactness at scale: (3/4) * 10^6 mod 2 = 750000 mod 2 = 0
  CHECK((Rational(3, 4) * Rational(1000000, 1)).floor_mod(2) == Rational(0, 1));
}

TEST_CASE("str round-trips through parse") {
  for (const auto& r : {Rational(3, 4), Rational(-3, 4), Rational(5, 1), Rational(0, 1)}) {
    auto back = Rational::parse(r.str());
    REQUIRE(back.has_value());
    CHECK(*back == r);
  }
}

TEST_CASE("checked_lcm") {
  CHECK(checked_lcm(4, 6) == 12);
  CHECK(checked_lcm(1, 1) == 1);
  CHECK(checked_lcm(7, 7) == 7);
  CHECK_THROWS_AS(checked_lcm(INT64_C(1) << 62, (INT64_C(1) << 62) - 1),
                  std::overflow_error);
}
