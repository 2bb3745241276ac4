#pragma once

#include "fxsv/polynomial.hpp"

namespace fxsv {

// Exact Schur stability test: true iff every root of p lies strictly inside
// the unit circle. Decided by the Jury/Schur-Cohn reduction in rational
// arithmetic; a root on the unit circle yields false.
// Requires a nonzero polynomial of degree >= 1 with positive leading
// coefficient (the characteristic polynomials fed here are monic).
// Throws std::invalid_argument otherwise.
bool jury_stable(const Polynomial& p);

}  // namespace fxsv
