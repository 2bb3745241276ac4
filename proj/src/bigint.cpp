#include "fxsv/bigint.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fxsv {

namespace {
constexpr uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(int64_t v) : sign_(0) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // Avoid overflow on INT64_MIN by working in unsigned space.
  uint64_t u = v < 0 ? ~static_cast<uint64_t>(v) + 1 : static_cast<uint64_t>(v);
  mag_.push_back(static_cast<uint32_t>(u & 0xffffffffu));
  if (u >> 32) mag_.push_back(static_cast<uint32_t>(u >> 32));
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a,
                    const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

int BigInt::cmp(const BigInt& a, const BigInt& b) {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_ ? -1 : 1;
  int c = cmp_mag(a.mag_, b.mag_);
  return a.sign_ >= 0 ? c : -c;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  const std::vector<uint32_t>& x = a.size() >= b.size() ? a : b;
  const std::vector<uint32_t>& y = a.size() >= b.size() ? b : a;
  std::vector<uint32_t> r;
  r.reserve(x.size() + 1);
  uint64_t carry = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    uint64_t s = carry + x[i] + (i < y.size() ? y[i] : 0);
    r.push_back(static_cast<uint32_t>(s & 0xffffffffu));
    carry = s >> 32;
  }
  if (carry) r.push_back(static_cast<uint32_t>(carry));
  return r;
}

std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  r.reserve(a.size());
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t d = static_cast<int64_t>(a[i]) - borrow -
                (i < b.size() ? static_cast<int64_t>(b[i]) : 0);
    if (d < 0) {
      d += static_cast<int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r.push_back(static_cast<uint32_t>(d));
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<uint32_t> BigInt::mul_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<uint32_t> r(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = r[i + j] + ai * b[j] + carry;
      r[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry) {
      uint64_t cur = r[k] + carry;
      r[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Knuth algorithm D on 32-bit limbs with a single-limb fast path.
void BigInt::divmod_mag(const std::vector<uint32_t>& a,
                        const std::vector<uint32_t>& b,
                        std::vector<uint32_t>& q, std::vector<uint32_t>& r) {
  q.clear();
  r.clear();
  if (cmp_mag(a, b) < 0) {
    r = a;
    return;
  }
  if (b.size() == 1) {
    uint64_t d = b[0];
    q.assign(a.size(), 0);
    uint64_t rem = 0;
    for (size_t i = a.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    if (rem) r.push_back(static_cast<uint32_t>(rem));
    return;
  }

  // Normalize so the divisor's top limb has its high bit set.
  int shift = 0;
  {
    uint32_t top = b.back();
    while (!(top & 0x80000000u)) {
      top <<= 1;
      ++shift;
    }
  }
  auto shl_mag = [](const std::vector<uint32_t>& v, int s) {
    std::vector<uint32_t> out(v.size() + 1, 0);
    for (size_t i = 0; i < v.size(); ++i) {
      uint64_t cur = static_cast<uint64_t>(v[i]) << s;
      out[i] |= static_cast<uint32_t>(cur & 0xffffffffu);
      out[i + 1] |= static_cast<uint32_t>(cur >> 32);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  };
  std::vector<uint32_t> u = shift ? shl_mag(a, shift) : a;
  std::vector<uint32_t> v = shift ? shl_mag(b, shift) : b;
  size_t n = v.size();
  size_t m = u.size() - n;
  u.resize(u.size() + 1, 0);
  q.assign(m + 1, 0);

  uint64_t vtop = v[n - 1];
  uint64_t vsec = v[n - 2];
  for (size_t j = m + 1; j-- > 0;) {
    uint64_t num_hi = (static_cast<uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    uint64_t qhat = num_hi / vtop;
    uint64_t rhat = num_hi % vtop;
    if (qhat >= kBase) {
      qhat = kBase - 1;
      rhat = num_hi - qhat * vtop;
    }
    while (rhat < kBase && qhat * vsec > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += vtop;
    }
    // Multiply-subtract qhat * v from u[j .. j+n].
    int64_t borrow = 0;
    uint64_t carry = 0;
    for (size_t i = 0; i < n; ++i) {
      uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      int64_t d = static_cast<int64_t>(u[i + j]) -
                  static_cast<int64_t>(p & 0xffffffffu) - borrow;
      if (d < 0) {
        d += static_cast<int64_t>(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = static_cast<uint32_t>(d);
    }
    int64_t d = static_cast<int64_t>(u[j + n]) - static_cast<int64_t>(carry) -
                borrow;
    bool neg = d < 0;
    u[j + n] = static_cast<uint32_t>(d + (neg ? static_cast<int64_t>(kBase) : 0));
    if (neg) {
      // qhat was one too large; add v back.
      --qhat;
      uint64_t c2 = 0;
      for (size_t i = 0; i < n; ++i) {
        uint64_t s = static_cast<uint64_t>(u[i + j]) + v[i] + c2;
        u[i + j] = static_cast<uint32_t>(s & 0xffffffffu);
        c2 = s >> 32;
      }
      u[j + n] = static_cast<uint32_t>(u[j + n] + c2);
    }
    q[j] = static_cast<uint32_t>(qhat);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  u.resize(n);
  while (!u.empty() && u.back() == 0) u.pop_back();
  if (shift) {
    // Undo normalization on the remainder.
    std::vector<uint32_t> out(u.size(), 0);
    uint32_t carry = 0;
    for (size_t i = u.size(); i-- > 0;) {
      out[i] = (u[i] >> shift) | carry;
      carry = u[i] << (32 - shift);
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    r = out;
  } else {
    r = u;
  }
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt operator+(const BigInt& a, const BigInt& b) {
  if (a.sign_ == 0) return b;
  if (b.sign_ == 0) return a;
  BigInt r;
  if (a.sign_ == b.sign_) {
    r.sign_ = a.sign_;
    r.mag_ = BigInt::add_mag(a.mag_, b.mag_);
  } else {
    int c = BigInt::cmp_mag(a.mag_, b.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.sign_ = a.sign_;
      r.mag_ = BigInt::sub_mag(a.mag_, b.mag_);
    } else {
      r.sign_ = b.sign_;
      r.mag_ = BigInt::sub_mag(b.mag_, a.mag_);
    }
  }
  return r;
}

BigInt operator-(const BigInt& a, const BigInt& b) { return a + (-b); }

BigInt operator*(const BigInt& a, const BigInt& b) {
  BigInt r;
  if (a.sign_ == 0 || b.sign_ == 0) return r;
  r.sign_ = a.sign_ * b.sign_;
  r.mag_ = BigInt::mul_mag(a.mag_, b.mag_);
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.sign_ == 0) throw std::domain_error("BigInt: division by zero");
  std::vector<uint32_t> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q = BigInt();
  r = BigInt();
  if (!qm.empty()) {
    q.sign_ = a.sign_ * b.sign_;
    q.mag_ = std::move(qm);
  }
  if (!rm.empty()) {
    r.sign_ = a.sign_;
    r.mag_ = std::move(rm);
  }
}

BigInt BigInt::div_trunc(const BigInt& b) const {
  BigInt q, r;
  divmod(*this, b, q, r);
  return q;
}

BigInt BigInt::mod_trunc(const BigInt& b) const {
  BigInt q, r;
  divmod(*this, b, q, r);
  return r;
}

void BigInt::divmod_floor(const BigInt& a, const BigInt& b, BigInt& q,
                          BigInt& r) {
  divmod(a, b, q, r);
  if (!r.is_zero() && (r.sign_ != b.sign_)) {
    q = q - BigInt(1);
    r = r + b;
  }
}

BigInt BigInt::shl(uint32_t bits) const {
  if (is_zero() || bits == 0) return *this;
  BigInt r;
  r.sign_ = sign_;
  size_t limbs = bits / 32;
  uint32_t s = bits % 32;
  r.mag_.assign(mag_.size() + limbs + 1, 0);
  for (size_t i = 0; i < mag_.size(); ++i) {
    uint64_t cur = static_cast<uint64_t>(mag_[i]) << s;
    r.mag_[i + limbs] |= static_cast<uint32_t>(cur & 0xffffffffu);
    r.mag_[i + limbs + 1] |= static_cast<uint32_t>(cur >> 32);
  }
  r.trim();
  return r;
}

BigInt BigInt::shr(uint32_t bits) const {
  if (is_zero() || bits == 0) return *this;
  size_t limbs = bits / 32;
  uint32_t s = bits % 32;
  if (limbs >= mag_.size()) return BigInt();
  BigInt r;
  r.sign_ = sign_;
  r.mag_.assign(mag_.size() - limbs, 0);
  for (size_t i = 0; i < r.mag_.size(); ++i) {
    uint64_t cur = mag_[i + limbs] >> s;
    if (s && i + limbs + 1 < mag_.size())
      cur |= static_cast<uint64_t>(mag_[i + limbs + 1]) << (32 - s);
    r.mag_[i] = static_cast<uint32_t>(cur);
  }
  r.trim();
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  uint32_t top = mag_.back();
  size_t n = (mag_.size() - 1) * 32;
  while (top) {
    ++n;
    top >>= 1;
  }
  return n;
}

bool BigInt::bit(size_t i) const {
  size_t limb = i / 32;
  if (limb >= mag_.size()) return false;
  return (mag_[limb] >> (i % 32)) & 1u;
}

bool BigInt::fits_int64() const {
  if (bit_length() < 64) return true;
  // INT64_MIN is the one 64-bit-wide representable value.
  return bit_length() == 64 && sign_ < 0 && mag_[0] == 0 &&
         mag_[1] == 0x80000000u;
}

int64_t BigInt::to_int64() const {
  uint64_t u = 0;
  if (!mag_.empty()) u = mag_[0];
  if (mag_.size() > 1) u |= static_cast<uint64_t>(mag_[1]) << 32;
  if (sign_ < 0) u = ~u + 1;  // two's-complement negate, INT64_MIN safe
  return static_cast<int64_t>(u);
}

long double BigInt::to_long_double() const {
  long double v = 0.0L;
  for (size_t i = mag_.size(); i-- > 0;) v = v * 4294967296.0L + mag_[i];
  return sign_ < 0 ? -v : v;
}

BigInt BigInt::from_decimal(std::string_view s) {
  size_t i = 0;
  int sign = 1;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    if (s[i] == '-') sign = -1;
    ++i;
  }
  if (i == s.size()) throw std::invalid_argument("BigInt: empty digit string");
  BigInt r;
  BigInt ten(10);
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9')
      throw std::invalid_argument("BigInt: bad digit in decimal string");
    r = r * ten + BigInt(s[i] - '0');
  }
  if (sign < 0) r = -r;
  return r;
}

BigInt BigInt::pow2(uint32_t k) { return BigInt(1).shl(k); }

BigInt BigInt::pow10(uint32_t k) {
  BigInt r(1);
  BigInt ten(10);
  for (uint32_t i = 0; i < k; ++i) r = r * ten;
  return r;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> cur = mag_;
  std::string digits;
  while (!cur.empty()) {
    // Divide by 10^9 and emit 9 digits at a time.
    uint64_t rem = 0;
    for (size_t i = cur.size(); i-- > 0;) {
      uint64_t x = (rem << 32) | cur[i];
      cur[i] = static_cast<uint32_t>(x / 1000000000u);
      rem = x % 1000000000u;
    }
    while (!cur.empty() && cur.back() == 0) cur.pop_back();
    for (int d = 0; d < 9; ++d) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

}  // namespace fxsv
