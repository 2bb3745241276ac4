#pragma once

#include <chrono>
#include <span>
#include <stdexcept>

#include "fxsv/bitvec.hpp"
#include "fxsv/properties.hpp"
#include "fxsv/solver.hpp"
#include "fxsv/statespace.hpp"

namespace fxsv {

// Raised when a satisfying assignment does not replay to a concrete
// violation. This is a soundness tripwire for encoder bugs and is never
// swallowed.
class ReplayMismatchError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct UnrolledFormula {
  BvBuilder builder;
  NodeId root = 0;
  uint32_t k = 0;
  Rational eps;
};

// Scalar fixed-point operations over bit-vector expressions, mirroring
// fx_add / fx_mul bit for bit (exact double-width product, rounding mode,
// overflow policy). These are the circuits the unroller instantiates; the
// exhaustive equivalence tests drive them directly.
NodeId encode_fx_add(BvBuilder& b, const FixedPointFormat& fmt, NodeId x,
                     NodeId y);
NodeId encode_fx_mul(BvBuilder& b, const FixedPointFormat& fmt, NodeId x,
                     NodeId y);
NodeId encode_fx_mul_const(BvBuilder& b, const FixedPointFormat& fmt,
                           int64_t coef_raw, NodeId x);

// Two synchronized unrollings of the SISO recurrence, per-operation
// quantized in their respective formats, sharing the free input symbols
// u(0..k-1), plus the property
//   exists n < k : |ext(y_q(n)) - y_ref(n)| > eps
// with inputs constrained to the narrow system's quantized bounds.
// Requires m = p = 1, k >= 1, ref strictly wider than narrow, and eps > 0
// exactly representable in the reference format.
UnrolledFormula unroll(const QuantizedSystem& narrow,
                       const QuantizedSystem& ref, uint32_t k,
                       const Rational& eps);

// Reads the input bits out of a satisfying assignment, replays both
// simulations concretely, and returns the witnessed violation. Throws
// ReplayMismatchError if the replay does not confirm one.
Counterexample decode_counterexample(const CnfFormula& f,
                                     std::span<const uint8_t> model,
                                     const QuantizedSystem& narrow,
                                     const QuantizedSystem& ref, uint32_t k,
                                     const Rational& eps);

struct BmcRunStats {
  size_t variables = 0;
  size_t clauses = 0;
  SolverStats solver;
  double encode_seconds = 0;
  double solve_seconds = 0;
};

// Full SAT pipeline: unroll, bit-blast, solve, and (on sat) decode with the
// replay check. Timeout yields Outcome::kUnknown.
Verdict check_quantization_error_sat(
    const QuantizedSystem& narrow, const QuantizedSystem& ref, uint32_t k,
    const Rational& eps,
    std::chrono::duration<double> timeout = std::chrono::duration<double>::max(),
    BmcRunStats* stats = nullptr);

namespace testing {
// Flips the nearest-rounding constant inside the encoder (not the
// simulator), so encoded circuits disagree with concrete replays on ties.
// Exists only so tests can prove the replay tripwire fires.
void set_encoder_rounding_fault(bool enabled);
}  // namespace testing

}  // namespace fxsv
