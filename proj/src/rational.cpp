#include "fxsv/rational.hpp"

#include <stdexcept>

namespace fxsv {

Rational::Rational(BigInt num, BigInt den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  reduce();
}

void Rational::reduce() {
  if (den_.is_neg()) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = num_.div_trunc(g);
    den_ = den_.div_trunc(g);
  }
}

Rational Rational::from_decimal(std::string_view lit) {
  size_t i = 0;
  bool neg = false;
  if (i < lit.size() && (lit[i] == '+' || lit[i] == '-')) {
    neg = lit[i] == '-';
    ++i;
  }
  std::string int_digits, frac_digits;
  while (i < lit.size() && lit[i] >= '0' && lit[i] <= '9')
    int_digits.push_back(lit[i++]);
  if (i < lit.size() && lit[i] == '.') {
    ++i;
    while (i < lit.size() && lit[i] >= '0' && lit[i] <= '9')
      frac_digits.push_back(lit[i++]);
  }
  if (i != lit.size() || (int_digits.empty() && frac_digits.empty()))
    throw std::invalid_argument("Rational: bad decimal literal");
  BigInt num = BigInt::from_decimal(int_digits.empty() ? "0" : int_digits);
  for (char c : frac_digits) num = num * BigInt(10) + BigInt(c - '0');
  if (neg) num = -num;
  return Rational(num, BigInt::pow10(static_cast<uint32_t>(frac_digits.size())));
}

int Rational::cmp(const Rational& a, const Rational& b) {
  return BigInt::cmp(a.num_ * b.den_, b.num_ * a.den_);
}

Rational Rational::operator-() const {
  Rational r = *this;
  r.num_ = -r.num_;
  return r;
}

Rational Rational::abs() const {
  Rational r = *this;
  r.num_ = r.num_.abs();
  return r;
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw std::domain_error("Rational: division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

Rational Rational::mul_pow2(int k) const {
  Rational r = *this;
  if (k >= 0)
    r.num_ = r.num_.shl(static_cast<uint32_t>(k));
  else
    r.den_ = r.den_.shl(static_cast<uint32_t>(-k));
  r.reduce();
  return r;
}

BigInt Rational::floor() const {
  BigInt q, r;
  BigInt::divmod_floor(num_, den_, q, r);
  return q;
}

BigInt Rational::ceil() const {
  BigInt q, r;
  BigInt::divmod_floor(num_ + den_ - BigInt(1), den_, q, r);
  return q;
}

BigInt Rational::trunc() const { return num_.div_trunc(den_); }

BigInt Rational::round_half_away() const {
  // floor((2|num| + den) / (2 den)) with the sign re-applied.
  BigInt two(2);
  BigInt n2 = num_.abs() * two + den_;
  BigInt q, r;
  BigInt::divmod_floor(n2, den_ * two, q, r);
  return num_.is_neg() ? -q : q;
}

long double Rational::to_long_double() const {
  // Scale down so huge operands do not overflow long double.
  size_t nb = num_.bit_length(), db = den_.bit_length();
  if (nb > 4000 || db > 4000) {
    uint32_t s = static_cast<uint32_t>(std::max(nb, db) - 2000);
    return num_.shr(s).to_long_double() / den_.shr(s).to_long_double();
  }
  return num_.to_long_double() / den_.to_long_double();
}

std::string Rational::to_string() const {
  if (is_integer()) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

std::optional<std::string> Rational::to_decimal_string() const {
  // Terminates iff den = 2^a * 5^b; then value * 10^max(a,b) is integral.
  BigInt d = den_;
  uint32_t twos = 0, fives = 0;
  BigInt two(2), five(5), q, r;
  for (;;) {
    BigInt::divmod(d, two, q, r);
    if (!r.is_zero()) break;
    d = q;
    ++twos;
  }
  for (;;) {
    BigInt::divmod(d, five, q, r);
    if (!r.is_zero()) break;
    d = q;
    ++fives;
  }
  if (d != BigInt(1)) return std::nullopt;
  uint32_t k = std::max(twos, fives);
  BigInt scaled = num_.abs() * BigInt::pow10(k);
  scaled = scaled.div_trunc(den_);
  std::string digits = scaled.to_string();
  std::string out;
  if (num_.is_neg()) out.push_back('-');
  if (k == 0) {
    out += digits;
    return out;
  }
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  out += digits;
  return out;
}

}  // namespace fxsv
