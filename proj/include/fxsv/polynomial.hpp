#pragma once

#include <string>
#include <vector>

#include "fxsv/rational.hpp"

namespace fxsv {

// Univariate polynomial with rational coefficients, ascending degree.
// The leading coefficient is nonzero unless the polynomial is zero.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const Rational& coeff(size_t i) const { return coeffs_[i]; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& leading() const { return coeffs_.back(); }

  Rational eval(const Rational& x) const;

  // Reciprocal polynomial z^n * p(1/z), i.e. coefficients reversed.
  Polynomial reciprocal() const;

  std::string to_string(const std::string& var = "z") const;

  bool operator==(const Polynomial& o) const;

 private:
  std::vector<Rational> coeffs_;
};

}  // namespace fxsv
