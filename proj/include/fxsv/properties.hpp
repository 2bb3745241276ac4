#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <variant>

#include "fxsv/polynomial.hpp"
#include "fxsv/statespace.hpp"

namespace fxsv {

enum class Property : uint8_t {
  kStability,
  kControllability,
  kObservability,
  kQuantizationError,
};

enum class Outcome : uint8_t { kHolds, kViolated, kUnknown };

std::string to_string(Property p);
std::string to_string(Outcome o);
Property property_from_string(const std::string& s);

// A violating input sequence plus the reference/quantized outputs at the
// first step where the error bound is exceeded (SISO).
struct Counterexample {
  std::vector<std::vector<FxNum>> inputs;  // u(0..k-1) in the narrow format
  uint32_t violating_step = 0;
  Rational y_ref;
  Rational y_q;
  Rational error;  // |y_q - y_ref| at the violating step
};

struct StabilityEvidence {
  Polynomial characteristic;  // of the (rationalized) quantized A
};

struct RankEvidence {
  size_t rank = 0;
  size_t required = 0;
};

struct Verdict {
  Property property;
  Outcome outcome;
  std::variant<std::monostate, StabilityEvidence, RankEvidence, Counterexample>
      evidence;
  std::chrono::duration<double> wall_time{0};
};

// Schur stability of the quantized A (exact Jury decision over the grid
// coefficients). For a closed-loop check, apply close_loop first.
Verdict check_stability(const QuantizedSystem& qsys);

// Kalman rank conditions. The controllability/observability matrices are
// formed with exact rational products of the quantized coefficients: FWL is
// applied to the coefficients once, never to the rank computation.
Verdict check_controllability(const QuantizedSystem& qsys);
Verdict check_observability(const QuantizedSystem& qsys);

// The Kalman matrices themselves, exposed for tests.
RationalMatrix controllability_matrix(const RationalMatrix& a,
                                      const RationalMatrix& b);
RationalMatrix observability_matrix(const RationalMatrix& a,
                                    const RationalMatrix& c);

}  // namespace fxsv
