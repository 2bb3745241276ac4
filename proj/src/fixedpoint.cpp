#include "fxsv/fixedpoint.hpp"

namespace fxsv {

std::string to_string(Rounding r) {
  switch (r) {
    case Rounding::kNearestTiesAway: return "nearest";
    case Rounding::kTruncate: return "truncate";
    case Rounding::kFloor: return "floor";
  }
  return "?";
}

std::string to_string(Overflow o) {
  return o == Overflow::kWrap ? "wrap" : "saturate";
}

Rounding rounding_from_string(const std::string& s) {
  if (s == "nearest") return Rounding::kNearestTiesAway;
  if (s == "truncate") return Rounding::kTruncate;
  if (s == "floor") return Rounding::kFloor;
  throw std::invalid_argument("unknown rounding mode: " + s);
}

Overflow overflow_from_string(const std::string& s) {
  if (s == "wrap") return Overflow::kWrap;
  if (s == "saturate") return Overflow::kSaturate;
  throw std::invalid_argument("unknown overflow mode: " + s);
}

std::string FixedPointFormat::to_string() const {
  return "<" + std::to_string(int_bits) + "," + std::to_string(frac_bits) + ">";
}

std::string FxNum::to_string() const {
  auto dec = to_rational().to_decimal_string();
  return dec ? *dec : to_rational().to_string();
}

namespace detail {

__int128 round_div_pow2(__int128 num, uint32_t fbits, Rounding mode) {
  if (fbits == 0) return num;
  const __int128 den = static_cast<__int128>(1) << fbits;
  __int128 q = num / den;  // truncates toward zero
  __int128 r = num % den;
  switch (mode) {
    case Rounding::kTruncate:
      return q;
    case Rounding::kFloor:
      return (r != 0 && num < 0) ? q - 1 : q;
    case Rounding::kNearestTiesAway: {
      const __int128 half = den / 2;
      if (r >= half) return q + 1;
      if (r <= -half) return q - 1;
      return q;
    }
  }
  return q;
}

int64_t apply_overflow_int64(__int128 v, const FixedPointFormat& fmt) {
  const int64_t lo = fmt.raw_min(), hi = fmt.raw_max();
  if (v >= lo && v <= hi) return static_cast<int64_t>(v);
  if (fmt.overflow == Overflow::kSaturate) return v < lo ? lo : hi;
  // Wrap: reduce mod 2^W into [lo, hi].
  const uint32_t w = fmt.width();
  __int128 span = static_cast<__int128>(1) << w;
  __int128 m = v % span;
  if (m < 0) m += span;
  if (m > hi) m -= span;
  return static_cast<int64_t>(m);
}

BigInt wrap_bigint(const BigInt& v, uint32_t width) {
  BigInt span = BigInt::pow2(width);
  BigInt q, m;
  BigInt::divmod_floor(v, span, q, m);  // m in [0, 2^W)
  if (m >= BigInt::pow2(width - 1)) m = m - span;
  return m;
}

}  // namespace detail

FxNum quantize(const Rational& x, const FixedPointFormat& fmt) {
  // Scale onto the raw grid and round per mode, in exact arithmetic.
  Rational scaled = x.mul_pow2(static_cast<int>(fmt.frac_bits));
  BigInt r;
  switch (fmt.rounding) {
    case Rounding::kNearestTiesAway: r = scaled.round_half_away(); break;
    case Rounding::kTruncate: r = scaled.trunc(); break;
    case Rounding::kFloor: r = scaled.floor(); break;
  }
  if (fmt.overflow == Overflow::kSaturate) {
    if (r < BigInt(fmt.raw_min())) return FxNum(fmt.raw_min(), fmt);
    if (r > BigInt(fmt.raw_max())) return FxNum(fmt.raw_max(), fmt);
    return FxNum(r.to_int64(), fmt);
  }
  return FxNum(detail::wrap_bigint(r, fmt.width()).to_int64(), fmt);
}

namespace {

void require_same_format(const FxNum& a, const FxNum& b, const char* op) {
  if (a.format() != b.format())
    throw std::invalid_argument(std::string(op) + ": operand format mismatch " +
                                a.format().to_string() + " vs " +
                                b.format().to_string());
}

}  // namespace

FxNum fx_add(const FxNum& a, const FxNum& b) {
  require_same_format(a, b, "fx_add");
  __int128 sum = static_cast<__int128>(a.raw()) + b.raw();
  return FxNum(detail::apply_overflow_int64(sum, a.format()), a.format());
}

FxNum fx_sub(const FxNum& a, const FxNum& b) {
  require_same_format(a, b, "fx_sub");
  __int128 diff = static_cast<__int128>(a.raw()) - b.raw();
  return FxNum(detail::apply_overflow_int64(diff, a.format()), a.format());
}

FxNum fx_neg(const FxNum& a) {
  __int128 neg = -static_cast<__int128>(a.raw());
  return FxNum(detail::apply_overflow_int64(neg, a.format()), a.format());
}

FxNum fx_mul(const FxNum& a, const FxNum& b) {
  require_same_format(a, b, "fx_mul");
  const FixedPointFormat& fmt = a.format();
  // Exact product has 2F fractional bits and fits in 2W-1 <= 126 bits.
  __int128 p = static_cast<__int128>(a.raw()) * b.raw();
  __int128 rounded = detail::round_div_pow2(p, fmt.frac_bits, fmt.rounding);
  return FxNum(detail::apply_overflow_int64(rounded, fmt), fmt);
}

}  // namespace fxsv
