#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

#include "fxsv/cnf.hpp"

namespace fxsv {

enum class SatResult : uint8_t { kSat, kUnsat, kUnknown };

struct SolverStats {
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t restarts = 0;
  uint64_t learned = 0;
};

struct SolverConfig {
  double var_decay = 0.95;
  double clause_decay = 0.999;
  uint32_t luby_unit = 128;   // conflicts per Luby step
  size_t reduce_base = 6000;  // learned clauses before first reduction
};

// Conflict-driven clause learning over a fixed clause set: two-watched-literal
// propagation, first-UIP learning with local minimization, activity-driven
// decisions (VSIDS) with phase saving, Luby restarts, and activity-based
// learned-clause deletion. Deterministic for a fixed configuration.
class Solver {
 public:
  explicit Solver(const CnfFormula& formula, SolverConfig cfg = SolverConfig());

  // Assumptions are forced as the first decisions. kUnknown only on timeout.
  SatResult solve(std::chrono::duration<double> timeout =
                      std::chrono::duration<double>::max(),
                  std::span<const int> assumptions = {});

  // Valid after kSat: model()[v] for 1-based var v. The model is checked
  // against every input clause before solve returns.
  const std::vector<uint8_t>& model() const { return model_; }
  const SolverStats& stats() const { return stats_; }

 private:
  using CRef = uint32_t;
  static constexpr CRef kNoReason = UINT32_MAX;
  static constexpr int kUndef = -1;

  struct Watch {
    CRef cref;
    int blocker;  // literal; clause already satisfied if blocker is true
  };

  const CnfFormula& formula_;
  SolverConfig cfg_;
  SolverStats stats_;

  int nvars_ = 0;
  bool contradiction_ = false;  // empty clause or level-0 conflict on input

  // Clause arena. Layout per clause: [header][activity?][lits...], header =
  // size << 2 | learned << 1 | deleted.
  std::vector<uint32_t> arena_;
  std::vector<CRef> learnts_;
  size_t num_reductions_ = 0;

  // lit = 2*var + sign (0-based var), sign 1 = negated.
  std::vector<std::vector<Watch>> watches_;
  std::vector<int8_t> assigns_;   // per var: 0 undef, 1 true, -1 false
  std::vector<int8_t> polarity_;  // saved phase, default false
  std::vector<uint32_t> level_;
  std::vector<CRef> reason_;
  std::vector<int> trail_;
  std::vector<size_t> trail_lim_;
  size_t qhead_ = 0;

  std::vector<double> activity_;
  double var_inc_ = 1.0;
  double cla_inc_ = 1.0;
  std::vector<uint8_t> seen_;  // scratch for analyze

  // Binary max-heap on activity, ties by var index.
  std::vector<int> heap_;
  std::vector<int> heap_pos_;

  std::vector<uint8_t> model_;

  // clause accessors
  uint32_t clause_size(CRef c) const { return arena_[c] >> 2; }
  bool clause_learned(CRef c) const { return (arena_[c] >> 1) & 1; }
  bool clause_deleted(CRef c) const { return arena_[c] & 1; }
  void mark_deleted(CRef c) { arena_[c] |= 1; }
  int* clause_lits(CRef c) {
    return reinterpret_cast<int*>(&arena_[c + 1 + clause_learned(c)]);
  }
  const int* clause_lits(CRef c) const {
    return reinterpret_cast<const int*>(&arena_[c + 1 + clause_learned(c)]);
  }
  float& clause_act(CRef c) { return reinterpret_cast<float&>(arena_[c + 1]); }

  static int lit_of(int dimacs) {
    int v = dimacs > 0 ? dimacs : -dimacs;
    return 2 * (v - 1) + (dimacs < 0 ? 1 : 0);
  }
  static int neg(int lit) { return lit ^ 1; }
  static int var(int lit) { return lit >> 1; }
  int8_t lit_value(int lit) const {
    int8_t a = assigns_[var(lit)];
    return (lit & 1) ? static_cast<int8_t>(-a) : a;
  }

  CRef add_clause_internal(std::vector<int>& lits, bool learned);
  void attach(CRef c);
  void enqueue(int lit, CRef from);
  CRef propagate();
  void cancel_until(uint32_t lvl);
  uint32_t decision_level() const { return trail_lim_.size(); }
  void new_decision_level() { trail_lim_.push_back(trail_.size()); }

  void analyze(CRef confl, std::vector<int>& learnt, uint32_t& bt_level);
  bool lit_redundant(int lit);
  void bump_var(int v);
  void bump_clause(CRef c);
  void decay_activities();

  void heap_insert(int v);
  int heap_pop();
  void heap_sift_up(size_t i);
  void heap_sift_down(size_t i);
  bool heap_less(int a, int b) const {
    return activity_[a] != activity_[b] ? activity_[a] > activity_[b] : a < b;
  }

  int pick_branch_var();
  void reduce_db();
  void rebuild_watches();
  void verify_model() const;

  static uint32_t luby(uint32_t i);
};

}  // namespace fxsv
