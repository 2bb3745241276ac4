#pragma once

#include <cstdint>
#include <optional>

#include "fxsv/linalg.hpp"
#include "fxsv/properties.hpp"
#include "fxsv/statespace.hpp"

// Independent brute-force verifiers for acceptance testing and soundness
// cross-checks. This module deliberately re-implements the recurrence on top
// of the fixedpoint ops only; it must not call into the BMC engine or the
// exact decision procedures it is used to check.

namespace fxsv {

struct EnumerationResult {
  Outcome outcome = Outcome::kHolds;
  std::optional<Counterexample> cex;  // lexicographically first violation
  uint64_t sequences = 0;             // size of the search space
};

inline constexpr uint64_t kDefaultEnumerationCap = uint64_t(1) << 20;

// Exhaustively enumerates every grid-valued input sequence of length k (in
// lexicographic order, u(0) most significant, raw values ascending) and
// simulates both systems concretely. Throws std::invalid_argument when the
// search space exceeds `cap` or eps is not on the reference grid.
// The parallel variant partitions the space across OpenMP threads and still
// returns the lexicographically first violation.
EnumerationResult enumerate_verify_serial(const QuantizedSystem& narrow,
                                          const QuantizedSystem& ref,
                                          uint32_t k, const Rational& eps,
                                          uint64_t cap = kDefaultEnumerationCap);
EnumerationResult enumerate_verify(const QuantizedSystem& narrow,
                                   const QuantizedSystem& ref, uint32_t k,
                                   const Rational& eps,
                                   uint64_t cap = kDefaultEnumerationCap);

enum class StabilityOracleAnswer : uint8_t { kStable, kUnstable, kNearBoundary };

// Spectral radius test in extended-precision floating point (characteristic
// polynomial + Durand-Kerner root finding). Answers kNearBoundary when any
// eigenvalue modulus is within 1e-6 of the unit circle or the root finder
// fails to converge; such answers must not be trusted as ground truth.
StabilityOracleAnswer numeric_stability_oracle(const RationalMatrix& a);

inline constexpr double kStabilityOracleBand = 1e-6;

}  // namespace fxsv
