#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "fxsv/rational.hpp"

namespace fxsv {

enum class Rounding : uint8_t {
  kNearestTiesAway,   // round to nearest, ties away from zero
  kTruncate,          // toward zero
  kFloor,             // toward -infinity
};

enum class Overflow : uint8_t {
  kWrap,      // two's-complement wraparound
  kSaturate,  // clamp to the representable range
};

std::string to_string(Rounding r);
std::string to_string(Overflow o);

// Two's-complement fixed-point format <I,F>: I integer bits including the
// sign bit, F fractional bits. Raw values live in [-2^(W-1), 2^(W-1)-1] with
// W = I + F, representing raw / 2^F.
struct FixedPointFormat {
  uint32_t int_bits = 2;
  uint32_t frac_bits = 0;
  Rounding rounding = Rounding::kNearestTiesAway;
  Overflow overflow = Overflow::kWrap;

  FixedPointFormat() = default;
  FixedPointFormat(uint32_t i, uint32_t f,
                   Rounding r = Rounding::kNearestTiesAway,
                   Overflow o = Overflow::kWrap)
      : int_bits(i), frac_bits(f), rounding(r), overflow(o) {
    validate();
  }

  // Raw values are held in int64_t; products are formed in __int128, which
  // caps the total width at 63 bits.
  void validate() const {
    if (int_bits < 1) throw std::invalid_argument("format: int_bits must be >= 1");
    uint32_t w = int_bits + frac_bits;
    if (w < 2) throw std::invalid_argument("format: total width must be >= 2");
    if (w > 63) throw std::invalid_argument("format: total width must be <= 63");
  }

  uint32_t width() const { return int_bits + frac_bits; }
  int64_t raw_min() const { return -(int64_t(1) << (width() - 1)); }
  int64_t raw_max() const { return (int64_t(1) << (width() - 1)) - 1; }
  Rational min_value() const { return Rational(raw_min()).mul_pow2(-int(frac_bits)); }
  Rational max_value() const { return Rational(raw_max()).mul_pow2(-int(frac_bits)); }
  // Grid step 2^-F.
  Rational ulp() const { return Rational(1).mul_pow2(-int(frac_bits)); }

  bool operator==(const FixedPointFormat& o) const {
    return int_bits == o.int_bits && frac_bits == o.frac_bits &&
           rounding == o.rounding && overflow == o.overflow;
  }
  bool operator!=(const FixedPointFormat& o) const { return !(*this == o); }

  std::string to_string() const;
};

// A value on the format's grid. Arithmetic between mismatched formats is a
// contract violation, never a silent coercion.
class FxNum {
 public:
  FxNum() : raw_(0) {}
  FxNum(int64_t raw, const FixedPointFormat& fmt) : raw_(raw), fmt_(fmt) {
    if (raw < fmt.raw_min() || raw > fmt.raw_max())
      throw std::invalid_argument("FxNum: raw value out of range");
  }

  int64_t raw() const { return raw_; }
  const FixedPointFormat& format() const { return fmt_; }
  Rational to_rational() const {
    return Rational(raw_).mul_pow2(-int(fmt_.frac_bits));
  }
  std::string to_string() const;

  bool operator==(const FxNum& o) const {
    return raw_ == o.raw_ && fmt_ == o.fmt_;
  }
  bool operator!=(const FxNum& o) const { return !(*this == o); }

 private:
  int64_t raw_;
  FixedPointFormat fmt_;
};

namespace detail {

// Rounds num / 2^fbits to an integer per mode.
__int128 round_div_pow2(__int128 num, uint32_t fbits, Rounding mode);

// Applies the overflow policy to an arbitrary integer, yielding a raw value
// in range. Wrap is reduction mod 2^W reinterpreted as signed.
int64_t apply_overflow_int64(__int128 v, const FixedPointFormat& fmt);
BigInt wrap_bigint(const BigInt& v, uint32_t width);

}  // namespace detail

// FWL[x]: quantize an exact rational onto the format grid. Total function.
FxNum quantize(const Rational& x, const FixedPointFormat& fmt);

// Grid sums/differences are exact; only the overflow policy applies.
FxNum fx_add(const FxNum& a, const FxNum& b);
FxNum fx_sub(const FxNum& a, const FxNum& b);
FxNum fx_neg(const FxNum& a);

// Exact double-width product, then rounded and overflow-handled back into
// the shared format.
FxNum fx_mul(const FxNum& a, const FxNum& b);

inline Rational to_rational(const FxNum& a) { return a.to_rational(); }

Rounding rounding_from_string(const std::string& s);
Overflow overflow_from_string(const std::string& s);

}  // namespace fxsv
