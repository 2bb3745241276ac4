#include <doctest.h>

#include <random>

#include "fxsv/fixedpoint.hpp"

using namespace fxsv;

namespace {
std::mt19937_64 rng(0xf1f2f3f4u);

FixedPointFormat fmt24(Rounding r = Rounding::kNearestTiesAway,
                       Overflow o = Overflow::kWrap) {
  return FixedPointFormat(2, 4, r, o);
}

Rational dec(const char* s) { return Rational::from_decimal(s); }
}  // namespace

TEST_CASE("format validation and range") {
  CHECK_THROWS(FixedPointFormat(0, 4));
  CHECK_THROWS(FixedPointFormat(1, 0));
  CHECK_THROWS(FixedPointFormat(40, 40));
  FixedPointFormat f = fmt24();
  CHECK(f.width() == 6);
  CHECK(f.raw_min() == -32);
  CHECK(f.raw_max() == 31);
  CHECK(f.min_value() == Rational(-2));
  CHECK(f.max_value() == dec("1.9375"));
  CHECK(f.ulp() == dec("0.0625"));
}

TEST_CASE("quantize examples") {
  // 0.1 in <2,4>: 0.1*16 = 1.6 -> 2, value 1/8.
  FxNum q = quantize(dec("0.1"), fmt24());
  CHECK(q.raw() == 2);
  CHECK(q.to_rational() == Rational(BigInt(1), BigInt(8)));

  // Saturation endpoint.
  FxNum s = quantize(Rational(3), fmt24(Rounding::kNearestTiesAway, Overflow::kSaturate));
  CHECK(s.to_rational() == dec("1.9375"));
  FxNum slo = quantize(Rational(-5), fmt24(Rounding::kNearestTiesAway, Overflow::kSaturate));
  CHECK(slo.to_rational() == Rational(-2));

  // Wrap: 3*16 = 48 mod 64 = 48 -> signed -16 -> value -1.
  FxNum w = quantize(Rational(3), fmt24());
  CHECK(w.raw() == -16);
  CHECK(w.to_rational() == Rational(-1));
}

TEST_CASE("quantize rounding modes") {
  FxNum f = quantize(dec("0.1"), fmt24(Rounding::kFloor));
  CHECK(f.raw() == 1);  // floor(1.6)
  FxNum t = quantize(dec("-0.1"), fmt24(Rounding::kTruncate));
  CHECK(t.raw() == -1);  // trunc(-1.6)
  FxNum fl = quantize(dec("-0.1"), fmt24(Rounding::kFloor));
  CHECK(fl.raw() == -2);  // floor(-1.6)
  // Tie goes away from zero.
  CHECK(quantize(dec("0.03125"), fmt24()).raw() == 1);   // 0.5 ulp up
  CHECK(quantize(dec("-0.03125"), fmt24()).raw() == -1); // -0.5 ulp down
}

TEST_CASE("fx_add examples") {
  FixedPointFormat wrap = fmt24();
  FixedPointFormat sat = fmt24(Rounding::kNearestTiesAway, Overflow::kSaturate);
  CHECK(fx_add(quantize(dec("0.5"), wrap), quantize(dec("0.25"), wrap)).to_rational() ==
        dec("0.75"));
  // 1.9375 + 0.0625 wraps to -2 (raw 32 -> -32).
  FxNum a = quantize(dec("1.9375"), wrap);
  FxNum b = quantize(dec("0.0625"), wrap);
  CHECK(fx_add(a, b).to_rational() == Rational(-2));
  FxNum as = quantize(dec("1.9375"), sat);
  FxNum bs = quantize(dec("0.0625"), sat);
  CHECK(fx_add(as, bs).to_rational() == dec("1.9375"));
  // Mismatched formats are rejected.
  CHECK_THROWS(fx_add(a, as));
  CHECK_THROWS(fx_add(a, quantize(dec("0.5"), FixedPointFormat(3, 4))));
}

TEST_CASE("fx_mul examples") {
  FixedPointFormat wrap = fmt24();
  FixedPointFormat sat = fmt24(Rounding::kNearestTiesAway, Overflow::kSaturate);
  CHECK(fx_mul(quantize(dec("0.5"), wrap), quantize(dec("0.375"), wrap)).to_rational() ==
        dec("0.1875"));
  // Underflow to zero: 0.0625^2 rounds to 0.
  CHECK(fx_mul(quantize(dec("0.0625"), wrap), quantize(dec("0.0625"), wrap)).raw() == 0);
  // Saturation: 1.5 * 1.5 = 2.25 > max.
  CHECK(fx_mul(quantize(dec("1.5"), sat), quantize(dec("1.5"), sat)).to_rational() ==
        dec("1.9375"));
}

TEST_CASE("to_rational round trip and idempotence") {
  for (const char* mode : {"nearest", "truncate", "floor"}) {
    for (const char* ovf : {"wrap", "saturate"}) {
      FixedPointFormat f(2, 4, rounding_from_string(mode), overflow_from_string(ovf));
      for (int64_t raw = f.raw_min(); raw <= f.raw_max(); ++raw) {
        FxNum x(raw, f);
        CHECK(quantize(x.to_rational(), f) == x);
      }
    }
  }
  CHECK(FxNum(-32, fmt24()).to_rational() == Rational(-2));
  CHECK(FxNum(2, fmt24()).to_rational() == Rational(BigInt(1), BigInt(8)));
}

TEST_CASE("nearest rounding error bound") {
  FixedPointFormat f = fmt24();
  Rational half_ulp = f.ulp().mul_pow2(-1);
  for (int i = 0; i < 2000; ++i) {
    // Random rational inside the representable range.
    int64_t num = static_cast<int64_t>(rng() % 4000) - 2000;
    int64_t den = 1 + static_cast<int64_t>(rng() % 1000);
    Rational x{BigInt(num), BigInt(den)};
    if (x < f.min_value() || x > f.max_value()) continue;
    Rational err = (quantize(x, f).to_rational() - x).abs();
    CHECK(err <= half_ulp);
  }
}

TEST_CASE("wrap arithmetic is exhaustive 4-bit two's complement") {
  // W = 4: every operand pair, add and mul, against integer semantics.
  FixedPointFormat f(2, 2, Rounding::kFloor, Overflow::kWrap);
  auto wrap4 = [](int64_t v) {
    int64_t m = ((v % 16) + 16) % 16;
    return m >= 8 ? m - 16 : m;
  };
  for (int64_t a = -8; a <= 7; ++a) {
    for (int64_t b = -8; b <= 7; ++b) {
      FxNum fa(a, f), fb(b, f);
      CHECK(fx_add(fa, fb).raw() == wrap4(a + b));
      // Product >> F with floor matches arithmetic shift semantics.
      int64_t p = a * b;
      int64_t shifted = p >= 0 ? (p >> 2) : -((-p + 3) >> 2);
      CHECK(fx_mul(fa, fb).raw() == wrap4(shifted));
      CHECK(fx_sub(fa, fb).raw() == wrap4(a - b));
    }
  }
}

TEST_CASE("saturating quantize is monotone") {
  FixedPointFormat f(2, 3, Rounding::kNearestTiesAway, Overflow::kSaturate);
  Rational prev;
  bool first = true;
  for (int64_t num = -40; num <= 40; ++num) {
    Rational x(BigInt(num), BigInt(7));
    Rational q = quantize(x, f).to_rational();
    if (!first) CHECK(prev <= q);
    prev = q;
    first = false;
  }
}

TEST_CASE("fx_neg saturates and wraps at the minimum") {
  FixedPointFormat wrap = fmt24();
  FixedPointFormat sat = fmt24(Rounding::kNearestTiesAway, Overflow::kSaturate);
  CHECK(fx_neg(FxNum(-32, wrap)).raw() == -32);  // -(-2) wraps back to -2
  CHECK(fx_neg(FxNum(-32, sat)).raw() == 31);
  CHECK(fx_neg(FxNum(5, wrap)).raw() == -5);
}

TEST_CASE("format strings") {
  CHECK(fmt24().to_string() == "<2,4>");
  CHECK(to_string(Rounding::kNearestTiesAway) == "nearest");
  CHECK(to_string(Overflow::kSaturate) == "saturate");
  CHECK(rounding_from_string("floor") == Rounding::kFloor);
  CHECK_THROWS(rounding_from_string("up"));
  CHECK_THROWS(overflow_from_string("clamp"));
  CHECK(FxNum(2, fmt24()).to_string() == "0.125");
}
