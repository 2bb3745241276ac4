#pragma once

#include <optional>
#include <vector>

#include "fxsv/fixedpoint.hpp"
#include "fxsv/linalg.hpp"

namespace fxsv {

// Discrete-time state-space model with exact rational coefficients:
//   x(n+1) = A x(n) + B u(n)
//   y(n)   = C x(n) + D u(n)
// plus initial state, input bounds, and an optional feedback gain K.
struct StateSpaceSystem {
  RationalMatrix a;  // n x n
  RationalMatrix b;  // n x m
  RationalMatrix c;  // p x n
  RationalMatrix d;  // p x m
  std::vector<Rational> x0;        // n
  std::vector<Rational> input_lo;  // m
  std::vector<Rational> input_hi;  // m
  std::optional<RationalMatrix> k;  // m x n

  size_t n() const { return a.rows(); }
  size_t m() const { return b.cols(); }
  size_t p() const { return c.rows(); }

  // Throws std::invalid_argument on inconsistent shapes or lo > hi.
  void validate() const;

  bool operator==(const StateSpaceSystem& o) const;
};

// Matrix of grid values sharing one format.
struct FxMatrix {
  size_t rows = 0, cols = 0;
  std::vector<FxNum> entries;  // row-major

  FxMatrix() = default;
  FxMatrix(size_t r, size_t c, const FixedPointFormat& fmt)
      : rows(r), cols(c), entries(r * c, FxNum(0, fmt)) {}

  FxNum& at(size_t r, size_t c) { return entries[r * cols + c]; }
  const FxNum& at(size_t r, size_t c) const { return entries[r * cols + c]; }

  RationalMatrix to_rational() const;
};

// The FWL image of a StateSpaceSystem: every coefficient, the initial state
// and the input bounds quantized into one shared format.
struct QuantizedSystem {
  FixedPointFormat format;
  FxMatrix a, b, c, d;
  std::vector<FxNum> x0;
  std::vector<FxNum> input_lo, input_hi;
  std::optional<FxMatrix> k;

  size_t n() const { return a.rows; }
  size_t m() const { return b.cols; }
  size_t p() const { return c.rows; }
};

struct Trajectory {
  std::vector<std::vector<FxNum>> inputs;   // k vectors of length m
  std::vector<std::vector<FxNum>> states;   // k+1 vectors of length n
  std::vector<std::vector<FxNum>> outputs;  // k vectors of length p
};

struct ExactTrajectory {
  std::vector<std::vector<FxNum>> inputs;
  std::vector<std::vector<Rational>> states;
  std::vector<std::vector<Rational>> outputs;
};

QuantizedSystem quantize_system(const StateSpaceSystem& sys,
                                const FixedPointFormat& fmt);

// State feedback u(n) = r(n) - K x(n), giving (A - BK, B, C, D) with r as
// the new input. Requires K and D == 0; throws otherwise. The quantized
// variant composes BK and A - BK with fx_mul/fx_add, so the closed-loop
// coefficients live on the grid.
StateSpaceSystem close_loop(const StateSpaceSystem& sys);
QuantizedSystem close_loop(const QuantizedSystem& qsys);

// Runs the recurrence with per-operation quantization. Dot products are
// row-major, accumulated left to right across the A|B (or C|D) row; this
// order is part of the contract since wrap overflow makes it observable.
// Throws on inputs outside the quantized bounds.
Trajectory simulate_quantized(const QuantizedSystem& qsys,
                              const std::vector<std::vector<FxNum>>& inputs,
                              uint32_t k);

// Same recurrence in exact rational arithmetic with the original
// coefficients; inputs remain grid values (the plant only ever sees
// quantized samples).
ExactTrajectory simulate_exact(const StateSpaceSystem& sys,
                               const std::vector<std::vector<FxNum>>& inputs,
                               uint32_t k);

// Exact embedding of a narrow grid value into a wider format.
FxNum widen(const FxNum& x, const FixedPointFormat& wide);

// Wide-format reference model for quantization-error checks: the original
// coefficients quantized into ref_fmt, with input bounds overridden by the
// narrow system's (exactly widened) bounds so both simulations accept the
// same input sequences.
QuantizedSystem reference_system(const StateSpaceSystem& sys,
                                 const QuantizedSystem& narrow,
                                 const FixedPointFormat& ref_fmt);

}  // namespace fxsv
