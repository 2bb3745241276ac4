#include "fxsv/bitvec.hpp"

#include <stdexcept>

namespace fxsv {

namespace {

// Canonical signed value of the low `width` bits of v.
BigInt wrap_signed(const BigInt& v, uint32_t width) {
  BigInt span = BigInt::pow2(width);
  BigInt q, m;
  BigInt::divmod_floor(v, span, q, m);
  if (m >= BigInt::pow2(width - 1)) m = m - span;
  return m;
}

// Unsigned bit pattern of a canonical signed value.
BigInt to_unsigned(const BigInt& v, uint32_t width) {
  return v.is_neg() ? v + BigInt::pow2(width) : v;
}

BigInt bitwise(const BigInt& a, const BigInt& b, uint32_t width,
               BvKind kind) {
  BigInt ua = to_unsigned(a, width), ub = to_unsigned(b, width);
  BigInt out(0);
  for (uint32_t i = width; i-- > 0;) {
    bool ba = ua.bit(i), bb = ub.bit(i);
    bool r = kind == BvKind::kAnd ? (ba && bb)
             : kind == BvKind::kOr ? (ba || bb)
                                   : !ba;  // kNot ignores b
    out = out.shl(1);
    if (r) out = out + BigInt(1);
  }
  return wrap_signed(out, width);
}

}  // namespace

NodeId BvBuilder::constant(const BigInt& v, uint32_t width) {
  BvNode n;
  n.kind = BvKind::kConst;
  n.width = width;
  n.value = wrap_signed(v, width);
  return push(std::move(n));
}

NodeId BvBuilder::input(uint32_t step, uint32_t index, uint32_t width) {
  BvNode n;
  n.kind = BvKind::kInput;
  n.width = width;
  n.aux = step;
  n.aux2 = index;
  return push(std::move(n));
}

NodeId BvBuilder::add(NodeId x, NodeId y) {
  const BvNode &nx = nodes_[x], &ny = nodes_[y];
  if (nx.width != ny.width) throw std::invalid_argument("bv add: width mismatch");
  if (nx.kind == BvKind::kConst && ny.kind == BvKind::kConst)
    return constant(nx.value + ny.value, nx.width);
  if (nx.kind == BvKind::kConst && nx.value.is_zero()) return y;
  if (ny.kind == BvKind::kConst && ny.value.is_zero()) return x;
  BvNode n;
  n.kind = BvKind::kAdd;
  n.width = nx.width;
  n.a = x;
  n.b = y;
  return push(std::move(n));
}

NodeId BvBuilder::mul(NodeId x, NodeId y) {
  const BvNode &nx = nodes_[x], &ny = nodes_[y];
  if (nx.width != ny.width) throw std::invalid_argument("bv mul: width mismatch");
  if (nx.kind == BvKind::kConst && ny.kind == BvKind::kConst)
    return constant(nx.value * ny.value, nx.width);
  // Keep any constant on the left; the blaster specializes constant factors.
  if (ny.kind == BvKind::kConst) return mul(y, x);
  if (nx.kind == BvKind::kConst) {
    if (nx.value.is_zero()) return x;
    if (nx.value == BigInt(1)) return y;
  }
  BvNode n;
  n.kind = BvKind::kMul;
  n.width = nx.width;
  n.a = x;
  n.b = y;
  return push(std::move(n));
}

NodeId BvBuilder::negate(NodeId x) {
  const BvNode& nx = nodes_[x];
  if (nx.kind == BvKind::kConst) return constant(-nx.value, nx.width);
  if (nx.kind == BvKind::kNeg) return nx.a;
  BvNode n;
  n.kind = BvKind::kNeg;
  n.width = nx.width;
  n.a = x;
  return push(std::move(n));
}

NodeId BvBuilder::extract(NodeId x, uint32_t lo, uint32_t width) {
  const BvNode& nx = nodes_[x];
  if (lo + width > nx.width)
    throw std::invalid_argument("bv extract: slice out of range");
  if (lo == 0 && width == nx.width) return x;
  if (nx.kind == BvKind::kConst) {
    BigInt u = to_unsigned(nx.value, nx.width).shr(lo);
    return constant(wrap_signed(u, width), width);
  }
  BvNode n;
  n.kind = BvKind::kExtract;
  n.width = width;
  n.a = x;
  n.aux = lo;
  return push(std::move(n));
}

NodeId BvBuilder::sign_extend(NodeId x, uint32_t width) {
  const BvNode& nx = nodes_[x];
  if (width < nx.width)
    throw std::invalid_argument("bv sign_extend: target narrower than source");
  if (width == nx.width) return x;
  if (nx.kind == BvKind::kConst) return constant(nx.value, width);
  BvNode n;
  n.kind = BvKind::kSignExtend;
  n.width = width;
  n.a = x;
  return push(std::move(n));
}

NodeId BvBuilder::gt_signed(NodeId x, NodeId y) {
  const BvNode &nx = nodes_[x], &ny = nodes_[y];
  if (nx.width != ny.width) throw std::invalid_argument("bv gt: width mismatch");
  if (nx.kind == BvKind::kConst && ny.kind == BvKind::kConst)
    return constant(nx.value > ny.value ? 1 : 0, 1);
  BvNode n;
  n.kind = BvKind::kGt;
  n.width = 1;
  n.a = x;
  n.b = y;
  return push(std::move(n));
}

NodeId BvBuilder::bit_and(NodeId x, NodeId y) {
  const BvNode &nx = nodes_[x], &ny = nodes_[y];
  if (nx.width != ny.width) throw std::invalid_argument("bv and: width mismatch");
  if (nx.kind == BvKind::kConst && ny.kind == BvKind::kConst)
    return constant(bitwise(nx.value, ny.value, nx.width, BvKind::kAnd), nx.width);
  for (auto [c, o] : {std::pair{x, y}, std::pair{y, x}}) {
    if (nodes_[c].kind == BvKind::kConst) {
      if (nodes_[c].value.is_zero()) return c;                 // all zeros
      if (nodes_[c].value == BigInt(-1)) return o;             // all ones
    }
  }
  if (x == y) return x;
  BvNode n;
  n.kind = BvKind::kAnd;
  n.width = nx.width;
  n.a = x;
  n.b = y;
  return push(std::move(n));
}

NodeId BvBuilder::bit_or(NodeId x, NodeId y) {
  const BvNode &nx = nodes_[x], &ny = nodes_[y];
  if (nx.width != ny.width) throw std::invalid_argument("bv or: width mismatch");
  if (nx.kind == BvKind::kConst && ny.kind == BvKind::kConst)
    return constant(bitwise(nx.value, ny.value, nx.width, BvKind::kOr), nx.width);
  for (auto [c, o] : {std::pair{x, y}, std::pair{y, x}}) {
    if (nodes_[c].kind == BvKind::kConst) {
      if (nodes_[c].value.is_zero()) return o;
      if (nodes_[c].value == BigInt(-1)) return c;
    }
  }
  if (x == y) return x;
  BvNode n;
  n.kind = BvKind::kOr;
  n.width = nx.width;
  n.a = x;
  n.b = y;
  return push(std::move(n));
}

NodeId BvBuilder::bit_not(NodeId x) {
  const BvNode& nx = nodes_[x];
  if (nx.kind == BvKind::kConst)
    return constant(bitwise(nx.value, nx.value, nx.width, BvKind::kNot), nx.width);
  if (nx.kind == BvKind::kNot) return nx.a;
  BvNode n;
  n.kind = BvKind::kNot;
  n.width = nx.width;
  n.a = x;
  return push(std::move(n));
}

NodeId BvBuilder::ite(NodeId sel, NodeId t, NodeId f) {
  if (nodes_[sel].width != 1) throw std::invalid_argument("bv ite: selector width");
  if (nodes_[sel].kind == BvKind::kConst)
    return nodes_[sel].value.is_zero() ? f : t;
  uint32_t w = nodes_[t].width;
  NodeId mask = sign_extend(sel, w);
  return bit_or(bit_and(mask, t), bit_and(bit_not(mask), f));
}

NodeId BvBuilder::shl(NodeId x, uint32_t amount) {
  if (amount == 0) return x;
  return mul(constant(BigInt::pow2(amount), nodes_[x].width), x);
}

BigInt bv_eval(const BvBuilder& b, NodeId root,
               const std::function<BigInt(uint32_t, uint32_t, uint32_t)>&
                   input_value) {
  std::vector<BigInt> vals(b.size());
  std::vector<uint8_t> ready(b.size(), 0);
  // Nodes are created children-first, so a forward sweep suffices.
  for (NodeId id = 0; id <= root; ++id) {
    const BvNode& n = b.node(id);
    switch (n.kind) {
      case BvKind::kConst: vals[id] = n.value; break;
      case BvKind::kInput:
        vals[id] = wrap_signed(input_value(n.aux, n.aux2, n.width), n.width);
        break;
      case BvKind::kAdd: vals[id] = wrap_signed(vals[n.a] + vals[n.b], n.width); break;
      case BvKind::kMul: vals[id] = wrap_signed(vals[n.a] * vals[n.b], n.width); break;
      case BvKind::kNeg: vals[id] = wrap_signed(-vals[n.a], n.width); break;
      case BvKind::kExtract: {
        BigInt u = to_unsigned(vals[n.a], b.node(n.a).width).shr(n.aux);
        vals[id] = wrap_signed(u, n.width);
        break;
      }
      case BvKind::kSignExtend: vals[id] = vals[n.a]; break;
      case BvKind::kGt: vals[id] = vals[n.a] > vals[n.b] ? wrap_signed(BigInt(1), 1) : BigInt(0); break;
      case BvKind::kAnd: vals[id] = bitwise(vals[n.a], vals[n.b], n.width, BvKind::kAnd); break;
      case BvKind::kOr: vals[id] = bitwise(vals[n.a], vals[n.b], n.width, BvKind::kOr); break;
      case BvKind::kNot: vals[id] = bitwise(vals[n.a], vals[n.a], n.width, BvKind::kNot); break;
    }
    ready[id] = 1;
  }
  return vals[root];
}

// ---- Tseitin blasting ----

int Blaster::and2(int a, int b) {
  if (a == kFalseLit || b == kFalseLit) return kFalseLit;
  if (a == kTrueLit) return b;
  if (b == kTrueLit) return a;
  if (a == b) return a;
  if (a == -b) return kFalseLit;
  int t = fresh();
  cnf_.add_clause({-t, a});
  cnf_.add_clause({-t, b});
  cnf_.add_clause({t, -a, -b});
  return t;
}

int Blaster::xor2(int a, int b) {
  if (a == kFalseLit) return b;
  if (b == kFalseLit) return a;
  if (a == kTrueLit) return -b;
  if (b == kTrueLit) return -a;
  if (a == b) return kFalseLit;
  if (a == -b) return kTrueLit;
  int t = fresh();
  cnf_.add_clause({-t, a, b});
  cnf_.add_clause({-t, -a, -b});
  cnf_.add_clause({t, -a, b});
  cnf_.add_clause({t, a, -b});
  return t;
}

int Blaster::maj3(int a, int b, int c) {
  if (a == kTrueLit) return or2(b, c);
  if (a == kFalseLit) return and2(b, c);
  if (b == kTrueLit) return or2(a, c);
  if (b == kFalseLit) return and2(a, c);
  if (c == kTrueLit) return or2(a, b);
  if (c == kFalseLit) return and2(a, b);
  if (a == b) return a;
  if (a == c) return a;
  if (b == c) return b;
  if (a == -b) return c;
  if (a == -c) return b;
  if (b == -c) return a;
  int t = fresh();
  cnf_.add_clause({-t, a, b});
  cnf_.add_clause({-t, a, c});
  cnf_.add_clause({-t, b, c});
  cnf_.add_clause({t, -a, -b});
  cnf_.add_clause({t, -a, -c});
  cnf_.add_clause({t, -b, -c});
  return t;
}

std::vector<int> Blaster::ripple_add(const std::vector<int>& a,
                                     const std::vector<int>& b, int carry_in) {
  std::vector<int> sum(a.size());
  int carry = carry_in;
  for (size_t i = 0; i < a.size(); ++i) {
    sum[i] = xor2(xor2(a[i], b[i]), carry);
    if (i + 1 < a.size()) carry = maj3(a[i], b[i], carry);
  }
  return sum;
}

std::vector<int> Blaster::shifted(const std::vector<int>& x, uint32_t by,
                                  uint32_t width) const {
  std::vector<int> out(width, kFalseLit);
  for (uint32_t i = by; i < width; ++i)
    if (i - by < x.size()) out[i] = x[i - by];
  return out;
}

std::vector<int> Blaster::mul_bits(const std::vector<int>& a,
                                   const std::vector<int>& b, NodeId xa,
                                   NodeId xb) {
  uint32_t w = static_cast<uint32_t>(a.size());
  std::vector<int> acc(w, kFalseLit);
  if (b_.node(xa).kind == BvKind::kConst) {
    // Constant factor: add a shifted copy of b for every set bit. Modulo
    // 2^w the unsigned reading of the raw bits is all that matters.
    BigInt u = to_unsigned(b_.node(xa).value, w);
    for (uint32_t i = 0; i < w; ++i)
      if (u.bit(i)) acc = ripple_add(acc, shifted(b, i, w), kFalseLit);
    return acc;
  }
  (void)xb;
  for (uint32_t i = 0; i < w; ++i) {
    std::vector<int> partial(w, kFalseLit);
    for (uint32_t j = i; j < w; ++j) partial[j] = and2(a[j - i], b[i]);
    acc = ripple_add(acc, partial, kFalseLit);
  }
  return acc;
}

int Blaster::unsigned_gt(std::vector<int> a, std::vector<int> b) {
  int gt = kFalseLit;
  for (size_t i = 0; i < a.size(); ++i) {
    int bit_gt = and2(a[i], -b[i]);
    int bit_eq = -xor2(a[i], b[i]);
    gt = or2(bit_gt, and2(bit_eq, gt));
  }
  return gt;
}

std::vector<int> Blaster::compute(NodeId id) {
  const BvNode& n = b_.node(id);
  switch (n.kind) {
    case BvKind::kConst: {
      BigInt u = to_unsigned(n.value, n.width);
      std::vector<int> out(n.width);
      for (uint32_t i = 0; i < n.width; ++i)
        out[i] = u.bit(i) ? kTrueLit : kFalseLit;
      return out;
    }
    case BvKind::kInput: {
      std::vector<int> out(n.width);
      for (uint32_t i = 0; i < n.width; ++i) {
        int v = fresh();
        out[i] = v;
        cnf_.annotate({v, n.aux, n.aux2, i});
      }
      return out;
    }
    case BvKind::kAdd:
      return ripple_add(bits(n.a), bits(n.b), kFalseLit);
    case BvKind::kNeg: {
      std::vector<int> inv = bits(n.a);
      for (int& l : inv) l = -l;
      return ripple_add(inv, std::vector<int>(inv.size(), kFalseLit), kTrueLit);
    }
    case BvKind::kMul:
      return mul_bits(bits(n.a), bits(n.b), n.a, n.b);
    case BvKind::kExtract: {
      const std::vector<int>& src = bits(n.a);
      return {src.begin() + n.aux, src.begin() + n.aux + n.width};
    }
    case BvKind::kSignExtend: {
      std::vector<int> out = bits(n.a);
      int msb = out.back();
      out.resize(n.width, msb);
      return out;
    }
    case BvKind::kGt: {
      // Signed compare = unsigned compare with the sign bits flipped.
      std::vector<int> a = bits(n.a), b2 = bits(n.b);
      a.back() = -a.back();
      b2.back() = -b2.back();
      return {unsigned_gt(std::move(a), std::move(b2))};
    }
    case BvKind::kAnd: {
      const std::vector<int>&a = bits(n.a), &b2 = bits(n.b);
      std::vector<int> out(n.width);
      for (uint32_t i = 0; i < n.width; ++i) out[i] = and2(a[i], b2[i]);
      return out;
    }
    case BvKind::kOr: {
      const std::vector<int>&a = bits(n.a), &b2 = bits(n.b);
      std::vector<int> out(n.width);
      for (uint32_t i = 0; i < n.width; ++i) out[i] = or2(a[i], b2[i]);
      return out;
    }
    case BvKind::kNot: {
      std::vector<int> out = bits(n.a);
      for (int& l : out) l = -l;
      return out;
    }
  }
  throw std::logic_error("blast: unreachable node kind");
}

const std::vector<int>& Blaster::bits(NodeId id) {
  if (memo_.size() < b_.size()) {
    memo_.resize(b_.size());
    done_.resize(b_.size(), 0);
  }
  if (!done_[id]) {
    memo_[id] = compute(id);
    done_[id] = 1;
  }
  return memo_[id];
}

CnfFormula bitblast(const BvBuilder& b, NodeId root) {
  if (b.node(root).width != 1)
    throw std::invalid_argument("bitblast: property must have width 1");
  Blaster bl(b);
  int bit = bl.bits(root)[0];
  CnfFormula cnf = std::move(bl.cnf());
  if (bit == kTrueLit) return cnf;  // trivially satisfiable
  if (bit == kFalseLit) {
    cnf.add_clause(std::initializer_list<int>{});  // intentionally unsat
    return cnf;
  }
  cnf.add_clause({bit});
  return cnf;
}

}  // namespace fxsv
