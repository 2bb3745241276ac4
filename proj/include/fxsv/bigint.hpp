#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fxsv {

// Arbitrary-precision signed integer, sign + magnitude with 32-bit limbs
// (little-endian, no trailing zero limbs; zero has an empty limb vector).
class BigInt {
 public:
  BigInt() : sign_(0) {}
  BigInt(int64_t v);

  // Parses an optionally signed decimal digit string. Throws
  // std::invalid_argument on anything else.
  static BigInt from_decimal(std::string_view s);
  static BigInt pow2(uint32_t k);
  static BigInt pow10(uint32_t k);

  bool is_zero() const { return sign_ == 0; }
  bool is_neg() const { return sign_ < 0; }
  int sign() const { return sign_; }

  // -1, 0, +1 for a < b, a == b, a > b.
  static int cmp(const BigInt& a, const BigInt& b);

  BigInt operator-() const;
  BigInt abs() const;

  friend BigInt operator+(const BigInt& a, const BigInt& b);
  friend BigInt operator-(const BigInt& a, const BigInt& b);
  friend BigInt operator*(const BigInt& a, const BigInt& b);

  // Truncated division: q = a/b toward zero, r = a - q*b (r has a's sign).
  // Throws std::domain_error on b == 0.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);
  BigInt div_trunc(const BigInt& b) const;
  BigInt mod_trunc(const BigInt& b) const;
  // Floor division (q rounds toward -inf, 0 <= r < |b| when b > 0).
  static void divmod_floor(const BigInt& a, const BigInt& b, BigInt& q,
                           BigInt& r);

  // Shifts on the magnitude; defined for non-negative values only.
  BigInt shl(uint32_t bits) const;
  BigInt shr(uint32_t bits) const;

  static BigInt gcd(BigInt a, BigInt b);  // always non-negative

  size_t bit_length() const;  // 0 for zero
  bool bit(size_t i) const;   // magnitude bit

  bool fits_int64() const;
  int64_t to_int64() const;  // caller checks fits_int64
  long double to_long_double() const;

  std::string to_string() const;  // decimal

  bool operator==(const BigInt& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const BigInt& o) const { return cmp(*this, o) != 0; }
  bool operator<(const BigInt& o) const { return cmp(*this, o) < 0; }
  bool operator<=(const BigInt& o) const { return cmp(*this, o) <= 0; }
  bool operator>(const BigInt& o) const { return cmp(*this, o) > 0; }
  bool operator>=(const BigInt& o) const { return cmp(*this, o) >= 0; }

 private:
  int sign_;
  std::vector<uint32_t> mag_;

  void trim();
  static int cmp_mag(const std::vector<uint32_t>& a,
                     const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  // Requires |a| >= |b|.
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a,
                         const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
};

}  // namespace fxsv
