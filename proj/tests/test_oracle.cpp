#include <doctest.h>

#include <random>

#include "fxsv/oracle.hpp"
#include "fxsv/stability.hpp"

using namespace fxsv;

namespace {

std::mt19937_64 rng(0x0bac1e00u);
Rational dec(const char* s) { return Rational::from_decimal(s); }

StateSpaceSystem siso(const char* a, const char* b, const char* c,
                      const char* d, const FixedPointFormat& fmt) {
  StateSpaceSystem s;
  s.a = RationalMatrix(1, 1);
  s.b = RationalMatrix(1, 1);
  s.c = RationalMatrix(1, 1);
  s.d = RationalMatrix(1, 1);
  s.a.at(0, 0) = dec(a);
  s.b.at(0, 0) = dec(b);
  s.c.at(0, 0) = dec(c);
  s.d.at(0, 0) = dec(d);
  s.x0 = {Rational(0)};
  s.input_lo = {fmt.min_value()};
  s.input_hi = {fmt.max_value()};
  return s;
}

}  // namespace

TEST_CASE("enumeration holds on the all-zero system") {
  FixedPointFormat nf(2, 3);
  StateSpaceSystem s = siso("0", "0", "0", "0", nf);
  QuantizedSystem narrow = quantize_system(s, nf);
  QuantizedSystem ref = reference_system(s, narrow, FixedPointFormat(6, 12));
  EnumerationResult r =
      enumerate_verify(narrow, ref, 2, Rational(1).mul_pow2(-10));
  CHECK(r.outcome == Outcome::kHolds);
  CHECK(r.sequences == 32ull * 32);
}

TEST_CASE("one-state quantization gap is violated") {
  FixedPointFormat nf(2, 4);
  StateSpaceSystem s = siso("0.03", "1", "1", "0", nf);
  QuantizedSystem narrow = quantize_system(s, nf);
  QuantizedSystem ref = reference_system(s, narrow, FixedPointFormat(6, 20));
  EnumerationResult r = enumerate_verify(narrow, ref, 3, dec("0.015625"));
  REQUIRE(r.outcome == Outcome::kViolated);
  REQUIRE(r.cex.has_value());
  CHECK(r.cex->error > dec("0.015625"));
  CHECK(r.cex->violating_step == 2);
}

TEST_CASE("serial and parallel enumeration agree, witness included") {
  for (int iter = 0; iter < 30; ++iter) {
    FixedPointFormat nf(2, 1 + rng() % 2);
    StateSpaceSystem s;
    size_t n = 1 + rng() % 2;
    s.a = RationalMatrix(n, n);
    s.b = RationalMatrix(n, 1);
    s.c = RationalMatrix(1, n);
    s.d = RationalMatrix(1, 1);
    auto coef = [&]() {
      return Rational(BigInt(static_cast<int64_t>(rng() % 25) - 12), BigInt(10));
    };
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) s.a.at(i, j) = coef();
    for (size_t i = 0; i < n; ++i) s.b.at(i, 0) = coef();
    for (size_t j = 0; j < n; ++j) s.c.at(0, j) = coef();
    s.d.at(0, 0) = coef();
    s.x0.assign(n, Rational(0));
    s.input_lo = {nf.min_value()};
    s.input_hi = {nf.max_value()};
    QuantizedSystem narrow = quantize_system(s, nf);
    QuantizedSystem ref =
        reference_system(s, narrow, FixedPointFormat(8, 16, nf.rounding, nf.overflow));
    uint32_t k = 1 + rng() % 3;
    Rational eps = Rational(BigInt(1 + static_cast<int64_t>(rng() % 8)), BigInt(16));

    EnumerationResult a = enumerate_verify_serial(narrow, ref, k, eps);
    EnumerationResult b = enumerate_verify(narrow, ref, k, eps);
    CHECK(a.outcome == b.outcome);
    CHECK(a.sequences == b.sequences);
    if (a.outcome == Outcome::kViolated) {
      REQUIRE(a.cex.has_value());
      REQUIRE(b.cex.has_value());
      CHECK(a.cex->violating_step == b.cex->violating_step);
      CHECK(a.cex->error == b.cex->error);
      for (uint32_t i = 0; i < k; ++i)
        CHECK(a.cex->inputs[i][0] == b.cex->inputs[i][0]);
    }
  }
}

TEST_CASE("enumeration cap is enforced") {
  FixedPointFormat nf(4, 8);  // 4096 grid points
  StateSpaceSystem s = siso("0.5", "1", "1", "0", nf);
  QuantizedSystem narrow = quantize_system(s, nf);
  QuantizedSystem ref = reference_system(s, narrow, FixedPointFormat(8, 16));
  CHECK_THROWS_WITH_AS(
      enumerate_verify(narrow, ref, 3, dec("0.25")),
      doctest::Contains("exceeds the cap"), std::invalid_argument);
  // A custom cap admits it... (4096^1 = 4096 <= 2^13)
  CHECK_NOTHROW(enumerate_verify(narrow, ref, 1, dec("0.25"), 1 << 13));
}

TEST_CASE("restricted input bounds shrink the search space") {
  FixedPointFormat nf(2, 3);
  StateSpaceSystem s = siso("0.5", "1", "1", "0", nf);
  s.input_lo = {Rational(0)};
  s.input_hi = {dec("0.875")};  // 8 grid points
  QuantizedSystem narrow = quantize_system(s, nf);
  QuantizedSystem ref = reference_system(s, narrow, FixedPointFormat(6, 12));
  EnumerationResult r = enumerate_verify(narrow, ref, 2, dec("0.25"));
  CHECK(r.sequences == 64);
}

TEST_CASE("numeric stability oracle explicit cases") {
  RationalMatrix half(1, 1);
  half.at(0, 0) = dec("0.5");
  CHECK(numeric_stability_oracle(half) == StabilityOracleAnswer::kStable);

  RationalMatrix just_over(1, 1);
  just_over.at(0, 0) = dec("1.0001");
  CHECK(numeric_stability_oracle(just_over) == StabilityOracleAnswer::kUnstable);

  // Companion matrix of z^2 - 3/2 z + 1/2: roots 1 and 1/2.
  RationalMatrix comp(2, 2);
  comp.at(0, 0) = Rational(0);
  comp.at(0, 1) = Rational(1);
  comp.at(1, 0) = dec("-0.5");
  comp.at(1, 1) = dec("1.5");
  CHECK(numeric_stability_oracle(comp) == StabilityOracleAnswer::kNearBoundary);
}

TEST_CASE("jury agrees with the numeric oracle outside the trust band") {
  int compared = 0;
  for (int iter = 0; iter < 300; ++iter) {
    size_t n = 1 + rng() % 4;
    RationalMatrix a(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        a.at(i, j) = Rational(BigInt(static_cast<int64_t>(rng() % 33) - 16),
                              BigInt(1 + static_cast<int64_t>(rng() % 12)));
    StabilityOracleAnswer ans = numeric_stability_oracle(a);
    if (ans == StabilityOracleAnswer::kNearBoundary) continue;
    ++compared;
    bool exact = jury_stable(char_poly(a));
    CHECK(exact == (ans == StabilityOracleAnswer::kStable));
  }
  CHECK(compared > 200);
}
