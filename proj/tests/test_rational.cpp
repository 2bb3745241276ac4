#include <doctest.h>

#include <random>

#include "fxsv/rational.hpp"

using fxsv::BigInt;
using fxsv::Rational;

namespace {
std::mt19937_64 rng(0x5eed0001u);
int64_t rnd(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(rng() % static_cast<uint64_t>(hi - lo + 1));
}
}  // namespace

TEST_CASE("rational reduction and sign normalization") {
  Rational r(BigInt(6), BigInt(-8));
  CHECK(r.num() == BigInt(-3));
  CHECK(r.den() == BigInt(4));
  CHECK(Rational(BigInt(0), BigInt(-5)) == Rational(0));
  CHECK_THROWS(Rational(BigInt(1), BigInt(0)));
}

TEST_CASE("rational decimal literals are exact") {
  Rational tenth = Rational::from_decimal("0.1");
  CHECK(tenth.num() == BigInt(1));
  CHECK(tenth.den() == BigInt(10));
  CHECK(Rational::from_decimal("-3.25") == Rational(BigInt(-13), BigInt(4)));
  CHECK(Rational::from_decimal(".5") == Rational(BigInt(1), BigInt(2)));
  CHECK(Rational::from_decimal("2.") == Rational(2));
  CHECK(Rational::from_decimal("+0.0625") == Rational(BigInt(1), BigInt(16)));
  CHECK_THROWS(Rational::from_decimal("1e3"));
  CHECK_THROWS(Rational::from_decimal("."));
  CHECK_THROWS(Rational::from_decimal("1.2.3"));
}

TEST_CASE("rational field arithmetic") {
  for (int i = 0; i < 5000; ++i) {
    Rational a(BigInt(rnd(-50, 50)), BigInt(rnd(1, 30)));
    Rational b(BigInt(rnd(-50, 50)), BigInt(rnd(1, 30)));
    Rational c(BigInt(rnd(-50, 50)), BigInt(rnd(1, 30)));
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("rational rounding helpers") {
  CHECK(Rational::from_decimal("1.5").round_half_away() == BigInt(2));
  CHECK(Rational::from_decimal("-1.5").round_half_away() == BigInt(-2));
  CHECK(Rational::from_decimal("2.5").round_half_away() == BigInt(3));
  CHECK(Rational::from_decimal("1.4999").round_half_away() == BigInt(1));
  CHECK(Rational::from_decimal("-0.5").round_half_away() == BigInt(-1));
  CHECK(Rational::from_decimal("-1.25").floor() == BigInt(-2));
  CHECK(Rational::from_decimal("-1.25").ceil() == BigInt(-1));
  CHECK(Rational::from_decimal("-1.25").trunc() == BigInt(-1));
  CHECK(Rational::from_decimal("1.75").floor() == BigInt(1));
  CHECK(Rational::from_decimal("1.75").trunc() == BigInt(1));
  CHECK(Rational(3).round_half_away() == BigInt(3));
}

TEST_CASE("rational pow2 scaling") {
  Rational x = Rational::from_decimal("0.375");
  CHECK(x.mul_pow2(4) == Rational(6));
  CHECK(x.mul_pow2(-2) == Rational(BigInt(3), BigInt(32)));
  CHECK(x.mul_pow2(3).mul_pow2(-3) == x);
}

TEST_CASE("rational decimal rendering") {
  CHECK(*Rational(BigInt(1), BigInt(8)).to_decimal_string() == "0.125");
  CHECK(*Rational(BigInt(-31), BigInt(16)).to_decimal_string() == "-1.9375");
  CHECK(*Rational(5).to_decimal_string() == "5");
  CHECK(*Rational(BigInt(1), BigInt(10)).to_decimal_string() == "0.1");
  CHECK(*Rational(BigInt(1), BigInt(20)).to_decimal_string() == "0.05");
  CHECK(!Rational(BigInt(1), BigInt(3)).to_decimal_string().has_value());
  // Round trip through the literal parser.
  for (int i = 0; i < 500; ++i) {
    Rational v(BigInt(rnd(-10000, 10000)), BigInt(1));
    v = v.mul_pow2(-static_cast<int>(rng() % 8));
    auto s = v.to_decimal_string();
    REQUIRE(s.has_value());
    CHECK(Rational::from_decimal(*s) == v);
  }
}

TEST_CASE("rational comparisons") {
  CHECK(Rational(BigInt(1), BigInt(3)) < Rational(BigInt(1), BigInt(2)));
  CHECK(Rational(BigInt(-1), BigInt(3)) > Rational(BigInt(-1), BigInt(2)));
  CHECK(Rational(0) <= Rational(0));
  CHECK(Rational::from_decimal("0.1").abs() == Rational::from_decimal("0.1"));
  CHECK(Rational::from_decimal("-0.1").abs() == Rational::from_decimal("0.1"));
}
