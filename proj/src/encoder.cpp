#include "fxsv/encoder.hpp"

#include <atomic>
#include <map>

namespace fxsv {

namespace {

std::atomic<bool> g_rounding_fault{false};

// Applies the overflow policy to a value wider than the format, yielding a
// format-width result.
NodeId encode_overflow(BvBuilder& b, const FixedPointFormat& fmt, NodeId t) {
  const uint32_t w = fmt.width();
  const uint32_t wt = b.node(t).width;
  if (fmt.overflow == Overflow::kWrap) return b.extract(t, 0, w);
  NodeId hi = b.constant(fmt.raw_max(), wt);
  NodeId lo = b.constant(fmt.raw_min(), wt);
  NodeId clamped =
      b.ite(b.gt_signed(t, hi), hi, b.ite(b.gt_signed(lo, t), lo, t));
  return b.extract(clamped, 0, w);
}

}  // namespace

NodeId encode_fx_mul(BvBuilder& b, const FixedPointFormat& fmt, NodeId x,
                     NodeId y) {
  const uint32_t w2 = 2 * fmt.width();
  NodeId p = b.mul(b.sign_extend(x, w2), b.sign_extend(y, w2));
  NodeId t = p;
  const uint32_t f = fmt.frac_bits;
  if (f > 0) {
    switch (fmt.rounding) {
      case Rounding::kNearestTiesAway: {
        int64_t half = int64_t(1) << (f - 1);
        if (g_rounding_fault.load(std::memory_order_relaxed)) half -= 1;
        t = b.add(p, b.constant(half, w2));
        // Ties away from zero: negative values get one less.
        NodeId sign = b.extract(p, w2 - 1, 1);
        t = b.add(t, b.sign_extend(sign, w2));
        break;
      }
      case Rounding::kTruncate: {
        // Toward zero = floor after adding 2^f - 1 to negatives.
        NodeId sign = b.extract(p, w2 - 1, 1);
        NodeId mask = b.bit_and(b.sign_extend(sign, w2),
                                b.constant((int64_t(1) << f) - 1, w2));
        t = b.add(p, mask);
        break;
      }
      case Rounding::kFloor:
        break;
    }
    t = b.extract(t, f, w2 - f);
  }
  return encode_overflow(b, fmt, t);
}

NodeId encode_fx_mul_const(BvBuilder& b, const FixedPointFormat& fmt,
                           int64_t coef_raw, NodeId x) {
  if (coef_raw == 0) return b.constant(0, fmt.width());
  return encode_fx_mul(b, fmt, b.constant(coef_raw, fmt.width()), x);
}

NodeId encode_fx_add(BvBuilder& b, const FixedPointFormat& fmt, NodeId x,
                     NodeId y) {
  const uint32_t w1 = fmt.width() + 1;
  NodeId s = b.add(b.sign_extend(x, w1), b.sign_extend(y, w1));
  return encode_overflow(b, fmt, s);
}

namespace {

// One unrolling of x(n+1) = A x(n) + B u(n), y(n) = C x(n) + D u(n) with the
// same accumulation order as simulate_quantized (A|B row, left to right).
class SystemUnroller {
 public:
  SystemUnroller(BvBuilder& b, const QuantizedSystem& sys)
      : b_(b), sys_(sys) {
    for (const FxNum& x : sys.x0)
      state_.push_back(b_.constant(x.raw(), sys.format.width()));
  }

  // Advances one step with the given input node; returns y(n) (p = 1).
  NodeId step(NodeId u) {
    NodeId y = row_pair(sys_.c, sys_.d, 0, u);
    std::vector<NodeId> next(sys_.n());
    for (size_t i = 0; i < sys_.n(); ++i) next[i] = row_pair(sys_.a, sys_.b, i, u);
    state_ = std::move(next);
    return y;
  }

 private:
  BvBuilder& b_;
  const QuantizedSystem& sys_;
  std::vector<NodeId> state_;

  NodeId row_pair(const FxMatrix& m1, const FxMatrix& m2, size_t row, NodeId u) {
    NodeId acc = 0;
    bool fresh = true;
    auto feed = [&](const FxMatrix& m, size_t j, NodeId sig) {
      int64_t coef = m.at(row, j).raw();
      if (coef == 0) return;  // fx_add with an exact zero is the identity
      NodeId prod = encode_fx_mul_const(b_, sys_.format, coef, sig);
      acc = fresh ? prod : encode_fx_add(b_, sys_.format, acc, prod);
      fresh = false;
    };
    for (size_t j = 0; j < m1.cols; ++j) feed(m1, j, state_[j]);
    for (size_t j = 0; j < m2.cols; ++j) feed(m2, j, u);
    return fresh ? b_.constant(0, sys_.format.width()) : acc;
  }
};

int64_t eps_raw_or_throw(const Rational& eps, const FixedPointFormat& ref) {
  if (!(eps > Rational(0)))
    throw std::invalid_argument("quantization error: eps must be positive");
  Rational scaled = eps.mul_pow2(static_cast<int>(ref.frac_bits));
  if (!scaled.is_integer())
    throw std::invalid_argument(
        "quantization error: eps is not representable in the reference format " +
        ref.to_string());
  if (eps > ref.max_value())
    throw std::invalid_argument(
        "quantization error: eps exceeds the reference format range");
  return scaled.num().to_int64();
}

}  // namespace

namespace testing {
void set_encoder_rounding_fault(bool enabled) { g_rounding_fault = enabled; }
}  // namespace testing

UnrolledFormula unroll(const QuantizedSystem& narrow,
                       const QuantizedSystem& ref, uint32_t k,
                       const Rational& eps) {
  if (narrow.m() != 1 || narrow.p() != 1)
    throw std::invalid_argument("quantization error: SISO systems only");
  if (ref.m() != 1 || ref.p() != 1 || ref.n() != narrow.n())
    throw std::invalid_argument("quantization error: reference shape mismatch");
  if (k == 0) throw std::invalid_argument("quantization error: bound k must be >= 1");
  const FixedPointFormat& nf = narrow.format;
  const FixedPointFormat& rf = ref.format;
  if (rf.int_bits < nf.int_bits || rf.frac_bits < nf.frac_bits ||
      rf.width() <= nf.width())
    throw std::invalid_argument(
        "quantization error: reference format must be strictly wider");
  if (narrow.input_lo[0].raw() > narrow.input_hi[0].raw())
    throw std::invalid_argument(
        "quantization error: input bounds quantize to an empty range");

  UnrolledFormula out;
  out.k = k;
  out.eps = eps;
  BvBuilder& b = out.builder;
  const int64_t eps_raw = eps_raw_or_throw(eps, rf);
  const uint32_t w = nf.width(), ww = rf.width();
  const uint32_t shift = rf.frac_bits - nf.frac_bits;

  SystemUnroller narrow_run(b, narrow);
  SystemUnroller ref_run(b, ref);

  NodeId constraints = b.constant(1, 1);
  NodeId violation = b.constant(0, 1);
  NodeId eps_hi = b.constant(eps_raw, ww + 1);
  NodeId eps_lo = b.constant(-eps_raw, ww + 1);

  for (uint32_t n = 0; n < k; ++n) {
    NodeId u = b.input(n, 0, w);
    if (narrow.input_lo[0].raw() != nf.raw_min()) {
      NodeId lo = b.constant(narrow.input_lo[0].raw(), w);
      constraints = b.bit_and(constraints, b.bit_not(b.gt_signed(lo, u)));
    }
    if (narrow.input_hi[0].raw() != nf.raw_max()) {
      NodeId hi = b.constant(narrow.input_hi[0].raw(), w);
      constraints = b.bit_and(constraints, b.bit_not(b.gt_signed(u, hi)));
    }
    NodeId u_ref = b.shl(b.sign_extend(u, ww), shift);

    NodeId yq = narrow_run.step(u);
    NodeId yr = ref_run.step(u_ref);

    NodeId ext = b.shl(b.sign_extend(yq, ww), shift);
    NodeId d = b.sub(b.sign_extend(ext, ww + 1), b.sign_extend(yr, ww + 1));
    NodeId viol = b.bit_or(b.gt_signed(d, eps_hi), b.gt_signed(eps_lo, d));
    violation = b.bit_or(violation, viol);
  }
  out.root = b.bit_and(constraints, violation);
  return out;
}

Counterexample decode_counterexample(const CnfFormula& f,
                                     std::span<const uint8_t> model,
                                     const QuantizedSystem& narrow,
                                     const QuantizedSystem& ref, uint32_t k,
                                     const Rational& eps) {
  const FixedPointFormat& nf = narrow.format;
  const uint32_t w = nf.width();
  std::map<uint32_t, int64_t> raw_by_step;
  for (const InputBitAnnotation& a : f.annotations()) {
    if (model[static_cast<size_t>(a.var)])
      raw_by_step[a.step] |= int64_t(1) << a.bit;
  }
  std::vector<std::vector<FxNum>> inputs;
  for (uint32_t n = 0; n < k; ++n) {
    int64_t raw = raw_by_step.count(n) ? raw_by_step[n] : 0;
    if (raw >= (int64_t(1) << (w - 1))) raw -= int64_t(1) << w;
    inputs.push_back({FxNum(raw, nf)});
  }

  Trajectory tq = simulate_quantized(narrow, inputs, k);
  std::vector<std::vector<FxNum>> wide_inputs;
  for (const auto& u : inputs)
    wide_inputs.push_back({widen(u[0], ref.format)});
  Trajectory tr = simulate_quantized(ref, wide_inputs, k);

  for (uint32_t n = 0; n < k; ++n) {
    Rational yq = tq.outputs[n][0].to_rational();
    Rational yr = tr.outputs[n][0].to_rational();
    Rational err = (yq - yr).abs();
    if (err > eps) {
      Counterexample cex;
      cex.inputs = std::move(inputs);
      cex.violating_step = n;
      cex.y_ref = yr;
      cex.y_q = yq;
      cex.error = err;
      return cex;
    }
  }
  throw ReplayMismatchError(
      "decode_counterexample: satisfying assignment does not replay to a "
      "violation (encoder and simulator disagree)");
}

Verdict check_quantization_error_sat(const QuantizedSystem& narrow,
                                     const QuantizedSystem& ref, uint32_t k,
                                     const Rational& eps,
                                     std::chrono::duration<double> timeout,
                                     BmcRunStats* stats) {
  using Clock = std::chrono::steady_clock;
  auto t0 = Clock::now();
  UnrolledFormula uf = unroll(narrow, ref, k, eps);
  CnfFormula cnf = bitblast(uf.builder, uf.root);
  auto t1 = Clock::now();

  Solver solver(cnf);
  SatResult res = solver.solve(timeout);
  auto t2 = Clock::now();

  if (stats) {
    stats->variables = static_cast<size_t>(cnf.variable_count());
    stats->clauses = cnf.clause_count();
    stats->solver = solver.stats();
    stats->encode_seconds = std::chrono::duration<double>(t1 - t0).count();
    stats->solve_seconds = std::chrono::duration<double>(t2 - t1).count();
  }

  Verdict v;
  v.property = Property::kQuantizationError;
  v.wall_time = t2 - t0;
  switch (res) {
    case SatResult::kSat:
      v.outcome = Outcome::kViolated;
      v.evidence = decode_counterexample(cnf, solver.model(), narrow, ref, k, eps);
      break;
    case SatResult::kUnsat:
      v.outcome = Outcome::kHolds;
      break;
    case SatResult::kUnknown:
      v.outcome = Outcome::kUnknown;
      break;
  }
  return v;
}

}  // namespace fxsv
