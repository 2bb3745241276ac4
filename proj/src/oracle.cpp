#include "fxsv/oracle.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fxsv {

namespace {

// Fixed-point stepping without trajectory allocation; the recurrence is
// written out here on purpose instead of reusing simulate_quantized, so the
// oracle stays an independent route from the code it cross-checks.
struct Stepper {
  const QuantizedSystem& sys;
  std::vector<FxNum> x;

  explicit Stepper(const QuantizedSystem& s) : sys(s), x(s.x0) {}

  void reset() { x = sys.x0; }

  // Returns y(n) and advances the state, SISO shape.
  FxNum step(const FxNum& u) {
    FxNum y = row(sys.c, sys.d, 0, u);
    std::vector<FxNum> next(x.size(), FxNum(0, sys.format));
    for (size_t i = 0; i < x.size(); ++i) next[i] = row(sys.a, sys.b, i, u);
    x = std::move(next);
    return y;
  }

  FxNum row(const FxMatrix& m1, const FxMatrix& m2, size_t r, const FxNum& u) {
    FxNum acc(0, sys.format);
    bool fresh = true;
    for (size_t j = 0; j < m1.cols; ++j) {
      FxNum prod = fx_mul(m1.at(r, j), x[j]);
      acc = fresh ? prod : fx_add(acc, prod);
      fresh = false;
    }
    for (size_t j = 0; j < m2.cols; ++j) {
      FxNum prod = fx_mul(m2.at(r, j), u);
      acc = fresh ? prod : fx_add(acc, prod);
      fresh = false;
    }
    return acc;
  }
};

struct EnumSetup {
  int64_t lo_raw;
  uint64_t grid;       // points per step
  uint64_t total;      // grid^k
  int64_t eps_raw;     // on the reference grid
  uint32_t shift;      // ref.frac_bits - narrow.frac_bits
};

EnumSetup prepare(const QuantizedSystem& narrow, const QuantizedSystem& ref,
                  uint32_t k, const Rational& eps, uint64_t cap) {
  if (narrow.m() != 1 || narrow.p() != 1)
    throw std::invalid_argument("enumerate: SISO systems only");
  if (k == 0) throw std::invalid_argument("enumerate: bound k must be >= 1");
  EnumSetup s;
  s.lo_raw = narrow.input_lo[0].raw();
  int64_t hi_raw = narrow.input_hi[0].raw();
  if (hi_raw < s.lo_raw)
    throw std::invalid_argument(
        "enumerate: input bounds quantize to an empty range");
  s.grid = static_cast<uint64_t>(hi_raw - s.lo_raw + 1);
  s.total = 1;
  for (uint32_t i = 0; i < k; ++i) {
    if (s.total > cap / s.grid + 1) s.total = cap + 1;  // saturating
    else s.total *= s.grid;
    if (s.total > cap)
      throw std::invalid_argument(
          "enumerate: search space exceeds the cap of " + std::to_string(cap) +
          " sequences");
  }
  Rational scaled = eps.mul_pow2(static_cast<int>(ref.format.frac_bits));
  if (!(eps > Rational(0)) || !scaled.is_integer() || !scaled.num().fits_int64())
    throw std::invalid_argument("enumerate: eps not on the reference grid");
  s.eps_raw = scaled.num().to_int64();
  s.shift = ref.format.frac_bits - narrow.format.frac_bits;
  return s;
}

// Simulates sequence `index` (mixed-radix decode, u(0) most significant).
// Returns the first violating step, or k if the bound holds on it.
uint32_t run_sequence(const QuantizedSystem& narrow, const QuantizedSystem& ref,
                      uint32_t k, const EnumSetup& s, uint64_t index,
                      std::vector<FxNum>* inputs_out = nullptr) {
  std::vector<int64_t> digits(k);
  uint64_t rest = index;
  for (uint32_t n = k; n-- > 0;) {
    digits[n] = s.lo_raw + static_cast<int64_t>(rest % s.grid);
    rest /= s.grid;
  }
  Stepper nq(narrow), nr(ref);
  uint32_t violating = k;
  for (uint32_t n = 0; n < k; ++n) {
    FxNum u(digits[n], narrow.format);
    FxNum ur(digits[n] << s.shift, ref.format);
    FxNum yq = nq.step(u);
    FxNum yr = nr.step(ur);
    int64_t ext = yq.raw() << s.shift;
    int64_t diff = ext - yr.raw();
    if (diff > s.eps_raw || diff < -s.eps_raw) {
      violating = n;
      break;
    }
  }
  if (inputs_out) {
    inputs_out->clear();
    for (uint32_t n = 0; n < k; ++n)
      inputs_out->push_back(FxNum(digits[n], narrow.format));
  }
  return violating;
}

EnumerationResult finish(const QuantizedSystem& narrow,
                         const QuantizedSystem& ref, uint32_t k,
                         const EnumSetup& s, uint64_t first_violation) {
  EnumerationResult r;
  r.sequences = s.total;
  if (first_violation == UINT64_MAX) {
    r.outcome = Outcome::kHolds;
    return r;
  }
  r.outcome = Outcome::kViolated;
  std::vector<FxNum> inputs;
  uint32_t step = run_sequence(narrow, ref, k, s, first_violation, &inputs);

  // Re-derive the witnessed outputs at the violating step.
  Stepper nq(narrow), nr(ref);
  FxNum yq(0, narrow.format), yr(0, ref.format);
  for (uint32_t n = 0; n <= step; ++n) {
    yq = nq.step(inputs[n]);
    yr = nr.step(FxNum(inputs[n].raw() << s.shift, ref.format));
  }
  Counterexample cex;
  for (const FxNum& u : inputs) cex.inputs.push_back({u});
  cex.violating_step = step;
  cex.y_q = yq.to_rational();
  cex.y_ref = yr.to_rational();
  cex.error = (cex.y_q - cex.y_ref).abs();
  r.cex = std::move(cex);
  return r;
}

}  // namespace

EnumerationResult enumerate_verify_serial(const QuantizedSystem& narrow,
                                          const QuantizedSystem& ref,
                                          uint32_t k, const Rational& eps,
                                          uint64_t cap) {
  EnumSetup s = prepare(narrow, ref, k, eps, cap);
  uint64_t first = UINT64_MAX;
  for (uint64_t idx = 0; idx < s.total; ++idx) {
    if (run_sequence(narrow, ref, k, s, idx) < k) {
      first = idx;
      break;
    }
  }
  return finish(narrow, ref, k, s, first);
}

EnumerationResult enumerate_verify(const QuantizedSystem& narrow,
                                   const QuantizedSystem& ref, uint32_t k,
                                   const Rational& eps, uint64_t cap) {
  EnumSetup s = prepare(narrow, ref, k, eps, cap);
  std::atomic<uint64_t> best{UINT64_MAX};

#ifdef _OPENMP
  const uint64_t block = 1024;
  const uint64_t nblocks = (s.total + block - 1) / block;
#pragma omp parallel for schedule(dynamic, 1)
  for (int64_t bi = 0; bi < static_cast<int64_t>(nblocks); ++bi) {
    uint64_t start = static_cast<uint64_t>(bi) * block;
    if (start >= best.load(std::memory_order_relaxed)) continue;
    uint64_t end = std::min(start + block, s.total);
    for (uint64_t idx = start; idx < end; ++idx) {
      if (idx >= best.load(std::memory_order_relaxed)) break;
      if (run_sequence(narrow, ref, k, s, idx) < k) {
        // atomic min
        uint64_t cur = best.load(std::memory_order_relaxed);
        while (idx < cur &&
               !best.compare_exchange_weak(cur, idx, std::memory_order_relaxed)) {
        }
        break;
      }
    }
  }
#else
  for (uint64_t idx = 0; idx < s.total; ++idx) {
    if (run_sequence(narrow, ref, k, s, idx) < k) {
      best = idx;
      break;
    }
  }
#endif
  return finish(narrow, ref, k, s, best.load());
}

// ---- numeric stability oracle ----

namespace {

using Cplx = std::complex<long double>;

// Characteristic polynomial coefficients in floating point via the
// Faddeev-LeVerrier recurrence (monic, ascending degree).
std::vector<long double> float_char_poly(const RationalMatrix& a) {
  const size_t n = a.rows();
  std::vector<long double> m(n * n, 0.0L), am(n * n, 0.0L);
  std::vector<long double> fa(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) fa[i * n + j] = a.at(i, j).to_long_double();
  std::vector<long double> c(n + 1, 0.0L);
  c[n] = 1.0L;
  for (size_t i = 0; i < n; ++i) m[i * n + i] = 1.0L;
  for (size_t kstep = 1; kstep <= n; ++kstep) {
    if (kstep > 1) {
      // M <- A*M + c_{n-k+1} I
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
          long double acc = 0.0L;
          for (size_t l = 0; l < n; ++l) acc += fa[i * n + l] * m[l * n + j];
          am[i * n + j] = acc;
        }
      m = am;
      for (size_t i = 0; i < n; ++i) m[i * n + i] += c[n - kstep + 1];
    }
    long double tr = 0.0L;
    for (size_t i = 0; i < n; ++i) {
      long double acc = 0.0L;
      for (size_t l = 0; l < n; ++l) acc += fa[i * n + l] * m[l * n + i];
      tr += acc;
    }
    c[n - kstep] = -tr / static_cast<long double>(kstep);
  }
  return c;
}

// Durand-Kerner simultaneous root iteration for a monic polynomial.
bool durand_kerner(const std::vector<long double>& coeffs,
                   std::vector<Cplx>& roots) {
  const size_t n = coeffs.size() - 1;
  roots.resize(n);
  Cplx seed(0.4L, 0.9L);
  Cplx z(1.0L, 0.0L);
  for (size_t i = 0; i < n; ++i) {
    z *= seed;
    roots[i] = z;
  }
  auto eval = [&](Cplx x) {
    Cplx acc(0.0L, 0.0L);
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    long double worst = 0.0L;
    for (size_t i = 0; i < n; ++i) {
      Cplx denom(1.0L, 0.0L);
      for (size_t j = 0; j < n; ++j)
        if (j != i) denom *= roots[i] - roots[j];
      if (std::abs(denom) == 0.0L) return false;
      Cplx delta = eval(roots[i]) / denom;
      roots[i] -= delta;
      worst = std::max(worst, std::abs(delta));
    }
    if (worst < 1e-17L) return true;
  }
  return false;
}

}  // namespace

StabilityOracleAnswer numeric_stability_oracle(const RationalMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("stability oracle: square matrix required");
  std::vector<long double> coeffs = float_char_poly(a);
  std::vector<Cplx> roots;
  if (!durand_kerner(coeffs, roots)) return StabilityOracleAnswer::kNearBoundary;
  long double max_mod = 0.0L;
  bool near = false;
  for (const Cplx& r : roots) {
    long double mod = std::abs(r);
    max_mod = std::max(max_mod, mod);
    if (std::fabs(static_cast<double>(mod) - 1.0) <= kStabilityOracleBand)
      near = true;
  }
  if (near) return StabilityOracleAnswer::kNearBoundary;
  return max_mod < 1.0L ? StabilityOracleAnswer::kStable
                        : StabilityOracleAnswer::kUnstable;
}

}  // namespace fxsv
