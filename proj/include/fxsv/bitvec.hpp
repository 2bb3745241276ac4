#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fxsv/bigint.hpp"
#include "fxsv/cnf.hpp"

namespace fxsv {

// Two's-complement bit-vector expressions. add/mul wrap at their width;
// callers pre-extend operands when they need exact results. and/or/not are
// bitwise; compare-gt is signed and yields width 1. A width-1 vector doubles
// as a boolean (sign_extend of it broadcasts, which is how muxes are built).
enum class BvKind : uint8_t {
  kConst,
  kInput,
  kAdd,
  kMul,
  kNeg,
  kExtract,
  kSignExtend,
  kGt,
  kAnd,
  kOr,
  kNot,
};

using NodeId = uint32_t;

struct BvNode {
  BvKind kind;
  uint32_t width;
  NodeId a = 0, b = 0;
  uint32_t aux = 0;   // extract: low bit; input: time step
  uint32_t aux2 = 0;  // input: component index
  BigInt value;       // kConst: canonical signed value in [-2^(w-1), 2^(w-1))
};

// Expression arena with eager constant folding and light algebraic
// simplification (x+0, x*0, x*2^k, double negation, ...).
class BvBuilder {
 public:
  NodeId constant(const BigInt& v, uint32_t width);
  NodeId constant(int64_t v, uint32_t width) { return constant(BigInt(v), width); }
  NodeId input(uint32_t step, uint32_t index, uint32_t width);

  NodeId add(NodeId x, NodeId y);
  NodeId sub(NodeId x, NodeId y) { return add(x, negate(y)); }
  NodeId mul(NodeId x, NodeId y);
  NodeId negate(NodeId x);
  NodeId extract(NodeId x, uint32_t lo, uint32_t width);
  NodeId sign_extend(NodeId x, uint32_t width);
  NodeId gt_signed(NodeId x, NodeId y);  // width 1
  NodeId bit_and(NodeId x, NodeId y);
  NodeId bit_or(NodeId x, NodeId y);
  NodeId bit_not(NodeId x);

  // sel ? t : f, built from the primitive kinds (sel has width 1).
  NodeId ite(NodeId sel, NodeId t, NodeId f);
  // Left shift by a constant = multiply by 2^amount (the blaster turns a
  // power-of-two multiplier into pure rewiring).
  NodeId shl(NodeId x, uint32_t amount);

  const BvNode& node(NodeId id) const { return nodes_[id]; }
  size_t size() const { return nodes_.size(); }

  bool is_const(NodeId id) const { return nodes_[id].kind == BvKind::kConst; }
  bool is_const_zero(NodeId id) const {
    return is_const(id) && nodes_[id].value.is_zero();
  }

 private:
  std::vector<BvNode> nodes_;
  NodeId push(BvNode n) {
    nodes_.push_back(std::move(n));
    return static_cast<NodeId>(nodes_.size() - 1);
  }
};

// Semantic value of a node under an input assignment (canonical signed).
// The callback supplies raw input values, already wrapped to their width.
BigInt bv_eval(const BvBuilder& b, NodeId root,
               const std::function<BigInt(uint32_t step, uint32_t index,
                                          uint32_t width)>& input_value);

// Tseitin conversion. Literals follow DIMACS conventions (+v/-v); the
// constants below stand for folded-away true/false bits.
constexpr int kTrueLit = INT32_MAX;
constexpr int kFalseLit = -INT32_MAX;

class Blaster {
 public:
  explicit Blaster(const BvBuilder& builder) : b_(builder) {}

  // Bits of `id`, LSB first. Fresh input variables are annotated in the CNF.
  const std::vector<int>& bits(NodeId id);

  CnfFormula& cnf() { return cnf_; }

 private:
  const BvBuilder& b_;
  CnfFormula cnf_;
  std::vector<std::vector<int>> memo_;
  std::vector<uint8_t> done_;

  int fresh() { return cnf_.new_var(); }
  int and2(int a, int b);
  int or2(int a, int b) { return -and2(-a, -b); }
  int xor2(int a, int b);
  int maj3(int a, int b, int c);
  std::vector<int> ripple_add(const std::vector<int>& a,
                              const std::vector<int>& b, int carry_in);
  std::vector<int> mul_bits(const std::vector<int>& a,
                            const std::vector<int>& b, NodeId xa, NodeId xb);
  std::vector<int> shifted(const std::vector<int>& x, uint32_t by,
                           uint32_t width) const;
  int unsigned_gt(std::vector<int> a, std::vector<int> b);
  std::vector<int> compute(NodeId id);
};

// Equisatisfiable CNF for a width-1 property expression: the root bit is
// asserted as a unit clause (or an empty clause when it folds to false).
CnfFormula bitblast(const BvBuilder& b, NodeId root);

}  // namespace fxsv
