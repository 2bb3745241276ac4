#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "fxsv/bigint.hpp"

namespace fxsv {

// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(int64_t v) : num_(v), den_(1) {}
  Rational(BigInt num, BigInt den);  // reduces; throws on den == 0

  // Exact value of a decimal literal such as "-3.25" or "0.1".
  static Rational from_decimal(std::string_view literal);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_neg() const { return num_.is_neg(); }
  bool is_integer() const { return den_ == BigInt(1); }

  static int cmp(const Rational& a, const Rational& b);

  Rational operator-() const;
  Rational abs() const;
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);  // throws on b == 0

  // Multiplies by 2^k (k may be negative).
  Rational mul_pow2(int k) const;

  BigInt floor() const;
  BigInt ceil() const;
  BigInt trunc() const;
  // Nearest integer, ties away from zero.
  BigInt round_half_away() const;

  long double to_long_double() const;
  std::string to_string() const;  // "num/den", or "num" when integral
  // Exact terminating decimal expansion, e.g. 1/8 -> "0.125". Empty optional
  // when the expansion does not terminate.
  std::optional<std::string> to_decimal_string() const;

  bool operator==(const Rational& o) const { return cmp(*this, o) == 0; }
  bool operator!=(const Rational& o) const { return cmp(*this, o) != 0; }
  bool operator<(const Rational& o) const { return cmp(*this, o) < 0; }
  bool operator<=(const Rational& o) const { return cmp(*this, o) <= 0; }
  bool operator>(const Rational& o) const { return cmp(*this, o) > 0; }
  bool operator>=(const Rational& o) const { return cmp(*this, o) >= 0; }

 private:
  BigInt num_;
  BigInt den_;  // > 0

  void reduce();
};

}  // namespace fxsv
