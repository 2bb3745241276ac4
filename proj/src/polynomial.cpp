#include "fxsv/polynomial.hpp"

namespace fxsv {

Polynomial::Polynomial(std::vector<Rational> coeffs)
    : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Rational Polynomial::eval(const Rational& x) const {
  Rational acc;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial Polynomial::reciprocal() const {
  std::vector<Rational> rev(coeffs_.rbegin(), coeffs_.rend());
  return Polynomial(std::move(rev));
}

bool Polynomial::operator==(const Polynomial& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  for (size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (size_t i = coeffs_.size(); i-- > 0;) {
    const Rational& c = coeffs_[i];
    if (c.is_zero()) continue;
    Rational a = c.abs();
    if (out.empty()) {
      if (c.is_neg()) out += "-";
    } else {
      out += c.is_neg() ? " - " : " + ";
    }
    bool unit = a == Rational(1);
    if (i == 0 || !unit) out += a.to_string();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

}  // namespace fxsv
