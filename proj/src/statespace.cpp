#include "fxsv/statespace.hpp"

#include <stdexcept>

namespace fxsv {

void StateSpaceSystem::validate() const {
  size_t nn = a.rows();
  if (a.cols() != nn || nn == 0)
    throw std::invalid_argument("system: A must be square and nonempty");
  if (b.rows() != nn || b.cols() == 0)
    throw std::invalid_argument("system: B must be n x m");
  if (c.cols() != nn || c.rows() == 0)
    throw std::invalid_argument("system: C must be p x n");
  if (d.rows() != c.rows() || d.cols() != b.cols())
    throw std::invalid_argument("system: D must be p x m");
  if (k && (k->rows() != b.cols() || k->cols() != nn))
    throw std::invalid_argument("system: K must be m x n");
  if (x0.size() != nn)
    throw std::invalid_argument("system: initial state must have n entries");
  if (input_lo.size() != b.cols() || input_hi.size() != b.cols())
    throw std::invalid_argument("system: input bounds must have m entries");
  for (size_t i = 0; i < input_lo.size(); ++i)
    if (input_lo[i] > input_hi[i])
      throw std::invalid_argument("system: inputs.min exceeds inputs.max");
}

bool StateSpaceSystem::operator==(const StateSpaceSystem& o) const {
  if (!(a == o.a && b == o.b && c == o.c && d == o.d)) return false;
  if (x0 != o.x0 || input_lo != o.input_lo || input_hi != o.input_hi)
    return false;
  if (k.has_value() != o.k.has_value()) return false;
  return !k || *k == *o.k;
}

RationalMatrix FxMatrix::to_rational() const {
  RationalMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.at(r, c) = at(r, c).to_rational();
  return m;
}

namespace {

FxMatrix quantize_matrix(const RationalMatrix& m, const FixedPointFormat& fmt) {
  FxMatrix q(m.rows(), m.cols(), fmt);
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c) q.at(r, c) = quantize(m.at(r, c), fmt);
  return q;
}

std::vector<FxNum> quantize_vec(const std::vector<Rational>& v,
                                const FixedPointFormat& fmt) {
  std::vector<FxNum> q;
  q.reserve(v.size());
  for (const auto& x : v) q.push_back(quantize(x, fmt));
  return q;
}

// acc <- acc + row .* vec, quantizing after every multiply and add. When
// `fresh` the first product initializes the accumulator.
FxNum fx_dot_accumulate(FxNum acc, bool& fresh, const FxMatrix& m, size_t row,
                        const std::vector<FxNum>& vec) {
  for (size_t j = 0; j < m.cols; ++j) {
    FxNum prod = fx_mul(m.at(row, j), vec[j]);
    if (fresh) {
      acc = prod;
      fresh = false;
    } else {
      acc = fx_add(acc, prod);
    }
  }
  return acc;
}

}  // namespace

QuantizedSystem quantize_system(const StateSpaceSystem& sys,
                                const FixedPointFormat& fmt) {
  sys.validate();
  QuantizedSystem q;
  q.format = fmt;
  q.a = quantize_matrix(sys.a, fmt);
  q.b = quantize_matrix(sys.b, fmt);
  q.c = quantize_matrix(sys.c, fmt);
  q.d = quantize_matrix(sys.d, fmt);
  q.x0 = quantize_vec(sys.x0, fmt);
  q.input_lo = quantize_vec(sys.input_lo, fmt);
  q.input_hi = quantize_vec(sys.input_hi, fmt);
  if (sys.k) q.k = quantize_matrix(*sys.k, fmt);
  return q;
}

StateSpaceSystem close_loop(const StateSpaceSystem& sys) {
  sys.validate();
  if (!sys.k) throw std::invalid_argument("close_loop: no feedback gain K");
  for (size_t i = 0; i < sys.d.rows(); ++i)
    for (size_t j = 0; j < sys.d.cols(); ++j)
      if (!sys.d.at(i, j).is_zero())
        throw std::invalid_argument("close_loop: nonzero D not supported");
  StateSpaceSystem cl = sys;
  cl.a = sys.a - sys.b * (*sys.k);
  cl.k.reset();
  return cl;
}

QuantizedSystem close_loop(const QuantizedSystem& qsys) {
  if (!qsys.k) throw std::invalid_argument("close_loop: no feedback gain K");
  for (const auto& e : qsys.d.entries)
    if (e.raw() != 0)
      throw std::invalid_argument("close_loop: nonzero D not supported");
  QuantizedSystem cl = qsys;
  const FxMatrix& b = qsys.b;
  const FxMatrix& k = *qsys.k;
  // BK then A - BK, all on the grid.
  FxMatrix bk(b.rows, k.cols, qsys.format);
  for (size_t i = 0; i < b.rows; ++i)
    for (size_t j = 0; j < k.cols; ++j) {
      FxNum acc(0, qsys.format);
      bool fresh = true;
      for (size_t l = 0; l < b.cols; ++l) {
        FxNum prod = fx_mul(b.at(i, l), k.at(l, j));
        if (fresh) {
          acc = prod;
          fresh = false;
        } else {
          acc = fx_add(acc, prod);
        }
      }
      bk.at(i, j) = acc;
    }
  for (size_t i = 0; i < bk.rows; ++i)
    for (size_t j = 0; j < bk.cols; ++j)
      cl.a.at(i, j) = fx_sub(qsys.a.at(i, j), bk.at(i, j));
  cl.k.reset();
  return cl;
}

Trajectory simulate_quantized(const QuantizedSystem& qsys,
                              const std::vector<std::vector<FxNum>>& inputs,
                              uint32_t k) {
  if (inputs.size() != k)
    throw std::invalid_argument("simulate: need exactly k input vectors");
  const size_t n = qsys.n(), m = qsys.m(), p = qsys.p();
  for (const auto& u : inputs) {
    if (u.size() != m)
      throw std::invalid_argument("simulate: input vector has wrong arity");
    for (size_t j = 0; j < m; ++j) {
      if (u[j].format() != qsys.format)
        throw std::invalid_argument("simulate: input format mismatch");
      if (u[j].raw() < qsys.input_lo[j].raw() ||
          u[j].raw() > qsys.input_hi[j].raw())
        throw std::invalid_argument("simulate: input out of bounds");
    }
  }

  Trajectory t;
  t.inputs = inputs;
  t.states.reserve(k + 1);
  t.outputs.reserve(k);
  std::vector<FxNum> x = qsys.x0;
  t.states.push_back(x);
  for (uint32_t step = 0; step < k; ++step) {
    const auto& u = inputs[step];
    std::vector<FxNum> y(p, FxNum(0, qsys.format));
    for (size_t i = 0; i < p; ++i) {
      bool fresh = true;
      FxNum acc(0, qsys.format);
      acc = fx_dot_accumulate(acc, fresh, qsys.c, i, x);
      acc = fx_dot_accumulate(acc, fresh, qsys.d, i, u);
      y[i] = acc;
    }
    std::vector<FxNum> xn(n, FxNum(0, qsys.format));
    for (size_t i = 0; i < n; ++i) {
      bool fresh = true;
      FxNum acc(0, qsys.format);
      acc = fx_dot_accumulate(acc, fresh, qsys.a, i, x);
      acc = fx_dot_accumulate(acc, fresh, qsys.b, i, u);
      xn[i] = acc;
    }
    t.outputs.push_back(std::move(y));
    x = std::move(xn);
    t.states.push_back(x);
  }
  return t;
}

ExactTrajectory simulate_exact(const StateSpaceSystem& sys,
                               const std::vector<std::vector<FxNum>>& inputs,
                               uint32_t k) {
  sys.validate();
  if (inputs.size() != k)
    throw std::invalid_argument("simulate: need exactly k input vectors");
  const size_t n = sys.n(), m = sys.m(), p = sys.p();
  std::vector<std::vector<Rational>> u_rat(k);
  for (uint32_t step = 0; step < k; ++step) {
    if (inputs[step].size() != m)
      throw std::invalid_argument("simulate: input vector has wrong arity");
    u_rat[step].reserve(m);
    for (size_t j = 0; j < m; ++j) {
      Rational v = inputs[step][j].to_rational();
      if (v < sys.input_lo[j] || v > sys.input_hi[j])
        throw std::invalid_argument("simulate: input out of bounds");
      u_rat[step].push_back(std::move(v));
    }
  }

  ExactTrajectory t;
  t.inputs = inputs;
  std::vector<Rational> x = sys.x0;
  t.states.push_back(x);
  for (uint32_t step = 0; step < k; ++step) {
    std::vector<Rational> y(p);
    for (size_t i = 0; i < p; ++i) {
      Rational acc;
      for (size_t j = 0; j < n; ++j) acc = acc + sys.c.at(i, j) * x[j];
      for (size_t j = 0; j < m; ++j) acc = acc + sys.d.at(i, j) * u_rat[step][j];
      y[i] = std::move(acc);
    }
    std::vector<Rational> xn(n);
    for (size_t i = 0; i < n; ++i) {
      Rational acc;
      for (size_t j = 0; j < n; ++j) acc = acc + sys.a.at(i, j) * x[j];
      for (size_t j = 0; j < m; ++j) acc = acc + sys.b.at(i, j) * u_rat[step][j];
      xn[i] = std::move(acc);
    }
    t.outputs.push_back(std::move(y));
    x = std::move(xn);
    t.states.push_back(x);
  }
  return t;
}

FxNum widen(const FxNum& x, const FixedPointFormat& wide) {
  const FixedPointFormat& f = x.format();
  if (wide.int_bits < f.int_bits || wide.frac_bits < f.frac_bits)
    throw std::invalid_argument("widen: target format is not wider");
  return FxNum(x.raw() << (wide.frac_bits - f.frac_bits), wide);
}

QuantizedSystem reference_system(const StateSpaceSystem& sys,
                                 const QuantizedSystem& narrow,
                                 const FixedPointFormat& ref_fmt) {
  QuantizedSystem ref = quantize_system(sys, ref_fmt);
  for (size_t j = 0; j < narrow.m(); ++j) {
    ref.input_lo[j] = widen(narrow.input_lo[j], ref_fmt);
    ref.input_hi[j] = widen(narrow.input_hi[j], ref_fmt);
  }
  return ref;
}

}  // namespace fxsv
