#include "fxsv/stability.hpp"

#include <stdexcept>

namespace fxsv {

// One Jury/Schur-Cohn reduction step. For p of degree n with |a_0| < |a_n|,
// p is Schur stable iff the degree-(n-1) polynomial
//   r(z) = (a_n p(z) - a_0 p*(z)) / z
// is, where p* is the reciprocal polynomial. The constant coefficient of the
// numerator cancels, so the division by z is a coefficient shift.
//
// When |a_0| >= |a_n| the product of the root moduli is >= 1, so some root
// has modulus >= 1 and p is not Schur stable. That covers the singular table
// rows (|a_0| = |a_n|) without any perturbation rule: strict stability is
// already refuted.
bool jury_stable(const Polynomial& p) {
  if (p.is_zero() || p.degree() < 1)
    throw std::invalid_argument("jury_stable: need degree >= 1");
  if (p.leading().is_neg() || p.leading().is_zero())
    throw std::invalid_argument("jury_stable: leading coefficient must be positive");

  std::vector<Rational> c = p.coeffs();
  while (c.size() > 1) {
    size_t n = c.size() - 1;
    const Rational& a0 = c[0];
    const Rational& an = c[n];
    if (a0.abs() >= an.abs()) return false;
    std::vector<Rational> next(n);
    for (size_t k = 1; k <= n; ++k)
      next[k - 1] = an * c[k] - a0 * c[n - k];
    c = std::move(next);
  }
  return true;
}

}  // namespace fxsv
