#include "fxsv/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fxsv {

Solver::Solver(const CnfFormula& formula, SolverConfig cfg)
    : formula_(formula), cfg_(cfg) {
  nvars_ = formula.variable_count();
  watches_.assign(2 * static_cast<size_t>(nvars_), {});
  assigns_.assign(nvars_, 0);
  polarity_.assign(nvars_, 1);  // branch false first
  level_.assign(nvars_, 0);
  reason_.assign(nvars_, kNoReason);
  activity_.assign(nvars_, 0.0);
  seen_.assign(nvars_, 0);
  heap_pos_.assign(nvars_, -1);
  heap_.reserve(nvars_);
  for (int v = 0; v < nvars_; ++v) heap_insert(v);

  // Larger inputs warrant a larger learned-clause budget.
  cfg_.reduce_base = std::max(cfg_.reduce_base, formula.clause_count() / 3);

  std::vector<int> lits;
  for (size_t i = 0; i < formula.clause_count() && !contradiction_; ++i) {
    lits.clear();
    for (int dl : formula.clause(i)) lits.push_back(lit_of(dl));
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
    bool tautology = false;
    for (size_t j = 0; j + 1 < lits.size(); ++j)
      if (lits[j + 1] == neg(lits[j])) tautology = true;
    if (tautology) continue;
    // Drop level-0 false literals; satisfied clauses are skipped.
    std::vector<int> eff;
    bool sat = false;
    for (int l : lits) {
      int8_t v = lit_value(l);
      if (v > 0) sat = true;
      if (v == 0) eff.push_back(l);
    }
    if (sat) continue;
    if (eff.empty()) {
      contradiction_ = true;
      break;
    }
    if (eff.size() == 1) {
      enqueue(eff[0], kNoReason);
      if (propagate() != kNoReason) contradiction_ = true;
      continue;
    }
    add_clause_internal(eff, false);
  }
}

Solver::CRef Solver::add_clause_internal(std::vector<int>& lits, bool learned) {
  CRef c = static_cast<CRef>(arena_.size());
  arena_.push_back((static_cast<uint32_t>(lits.size()) << 2) |
                   (learned ? 2u : 0u));
  if (learned) {
    arena_.push_back(0);
    clause_act(c) = 0.0f;
  }
  for (int l : lits) arena_.push_back(static_cast<uint32_t>(l));
  attach(c);
  if (learned) {
    learnts_.push_back(c);
    ++stats_.learned;
  }
  return c;
}

void Solver::attach(CRef c) {
  const int* lits = clause_lits(c);
  watches_[neg(lits[0])].push_back({c, lits[1]});
  watches_[neg(lits[1])].push_back({c, lits[0]});
}

void Solver::enqueue(int lit, CRef from) {
  int v = var(lit);
  assigns_[v] = (lit & 1) ? -1 : 1;
  level_[v] = decision_level();
  reason_[v] = from;
  trail_.push_back(lit);
}

Solver::CRef Solver::propagate() {
  while (qhead_ < trail_.size()) {
    int p = trail_[qhead_++];  // p is true; visit clauses watching ~p
    ++stats_.propagations;
    std::vector<Watch>& ws = watches_[p];
    size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watch w = ws[i];
      if (lit_value(w.blocker) > 0) {
        ws[j++] = ws[i++];
        continue;
      }
      CRef c = w.cref;
      int* lits = clause_lits(c);
      uint32_t size = clause_size(c);
      // Ensure the false literal (~p) is at position 1.
      int false_lit = neg(p);
      if (lits[0] == false_lit) std::swap(lits[0], lits[1]);
      // lits[0] may satisfy the clause already.
      if (lit_value(lits[0]) > 0) {
        ws[j++] = {c, lits[0]};
        ++i;
        continue;
      }
      // Look for a new literal to watch.
      bool moved = false;
      for (uint32_t k = 2; k < size; ++k) {
        if (lit_value(lits[k]) >= 0) {
          std::swap(lits[1], lits[k]);
          watches_[neg(lits[1])].push_back({c, lits[0]});
          moved = true;
          break;
        }
      }
      if (moved) {
        ++i;  // watch moved elsewhere, drop from this list
        continue;
      }
      // Unit or conflicting.
      ws[j++] = {c, lits[0]};
      ++i;
      if (lit_value(lits[0]) < 0) {
        // Conflict: compact the rest of the list and return.
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return c;
      }
      enqueue(lits[0], c);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::cancel_until(uint32_t lvl) {
  if (decision_level() <= lvl) return;
  size_t bound = trail_lim_[lvl];
  for (size_t i = trail_.size(); i-- > bound;) {
    int lit = trail_[i];
    int v = var(lit);
    polarity_[v] = static_cast<int8_t>(lit & 1 ? 1 : 0);
    assigns_[v] = 0;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(bound);
  trail_lim_.resize(lvl);
  qhead_ = trail_.size();
}

void Solver::bump_var(int v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_sift_up(static_cast<size_t>(heap_pos_[v]));
}

void Solver::bump_clause(CRef c) {
  float& act = clause_act(c);
  act += static_cast<float>(cla_inc_);
  if (act > 1e20f) {
    for (CRef l : learnts_)
      if (!clause_deleted(l)) clause_act(l) *= 1e-20f;
    cla_inc_ *= 1e-20;
  }
}

void Solver::decay_activities() {
  var_inc_ /= cfg_.var_decay;
  cla_inc_ /= cfg_.clause_decay;
}

void Solver::analyze(CRef confl, std::vector<int>& learnt, uint32_t& bt_level) {
  learnt.clear();
  learnt.push_back(0);  // slot for the asserting literal
  int counter = 0;
  int p = kUndef;
  size_t index = trail_.size();

  for (;;) {
    const int* lits = clause_lits(confl);
    uint32_t size = clause_size(confl);
    if (clause_learned(confl)) bump_clause(confl);
    for (uint32_t k = (p == kUndef ? 0 : 1); k < size; ++k) {
      int q = lits[k];
      int v = var(q);
      if (!seen_[v] && level_[v] > 0) {
        seen_[v] = 1;
        bump_var(v);
        if (level_[v] >= decision_level())
          ++counter;
        else
          learnt.push_back(q);
      }
    }
    // Next literal on the trail that participates in the conflict.
    while (!seen_[var(trail_[--index])]) {
    }
    p = trail_[index];
    confl = reason_[var(p)];
    seen_[var(p)] = 0;
    if (--counter == 0) break;
  }
  learnt[0] = neg(p);

  // Local minimization: drop literals implied by the rest of the clause.
  // Keep the original literal set so every seen_ mark is cleared afterwards.
  std::vector<int> marked(learnt.begin() + 1, learnt.end());
  size_t kept = 1;
  for (size_t i = 1; i < learnt.size(); ++i) {
    if (!lit_redundant(learnt[i])) learnt[kept++] = learnt[i];
  }
  learnt.resize(kept);

  // Backjump level: highest level below the asserting literal's.
  bt_level = 0;
  if (learnt.size() > 1) {
    size_t max_i = 1;
    for (size_t i = 2; i < learnt.size(); ++i)
      if (level_[var(learnt[i])] > level_[var(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    bt_level = level_[var(learnt[1])];
  }

  for (int q : marked) seen_[var(q)] = 0;
}

bool Solver::lit_redundant(int lit) {
  CRef r = reason_[var(lit)];
  if (r == kNoReason) return false;
  const int* lits = clause_lits(r);
  uint32_t size = clause_size(r);
  for (uint32_t k = 1; k < size; ++k) {
    int v = var(lits[k]);
    if (!seen_[v] && level_[v] > 0) return false;
  }
  return true;
}

void Solver::heap_insert(int v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_sift_up(heap_.size() - 1);
}

void Solver::heap_sift_up(size_t i) {
  int v = heap_[i];
  while (i > 0) {
    size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_sift_down(size_t i) {
  int v = heap_[i];
  for (;;) {
    size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child]))
      ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

int Solver::heap_pop() {
  int v = heap_[0];
  heap_pos_[v] = -1;
  heap_[0] = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_pos_[heap_[0]] = 0;
    heap_sift_down(0);
  }
  return v;
}

int Solver::pick_branch_var() {
  while (!heap_.empty()) {
    int v = heap_pop();
    if (assigns_[v] == 0) return v;
  }
  return kUndef;
}

void Solver::reduce_db() {
  // Keep the more active half; never drop reason clauses or binaries.
  std::vector<CRef> sorted;
  sorted.reserve(learnts_.size());
  for (CRef c : learnts_)
    if (!clause_deleted(c)) sorted.push_back(c);
  std::sort(sorted.begin(), sorted.end(), [this](CRef a, CRef b) {
    return clause_act(a) < clause_act(b);
  });
  auto is_locked = [&](CRef c) {
    const int* lits = clause_lits(c);
    int v = var(lits[0]);
    return assigns_[v] != 0 && reason_[v] == c;
  };
  size_t to_delete = sorted.size() / 2;
  size_t deleted = 0;
  for (CRef c : sorted) {
    if (deleted >= to_delete) break;
    if (clause_size(c) <= 2 || is_locked(c)) continue;
    mark_deleted(c);
    ++deleted;
  }
  learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(),
                                [this](CRef c) { return clause_deleted(c); }),
                 learnts_.end());
  rebuild_watches();
  ++num_reductions_;
}

void Solver::rebuild_watches() {
  for (auto& w : watches_) w.clear();
  for (CRef c = 0; c < arena_.size();) {
    uint32_t size = clause_size(c);
    bool learned = clause_learned(c);
    if (!clause_deleted(c)) attach(c);
    c += 1 + (learned ? 1 : 0) + size;
  }
}

uint32_t Solver::luby(uint32_t x) {
  // Luby sequence: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
  uint32_t size = 1, seq = 0;
  while (size < x + 1) {
    ++seq;
    size = 2 * size + 1;
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return 1u << seq;
}

SatResult Solver::solve(std::chrono::duration<double> timeout,
                        std::span<const int> assumptions) {
  if (contradiction_) return SatResult::kUnsat;
  auto deadline = std::chrono::steady_clock::now() + timeout;
  bool has_deadline = timeout != std::chrono::duration<double>::max();

  std::vector<int> assume;
  for (int dl : assumptions) assume.push_back(lit_of(dl));

  uint32_t restart_num = 0;
  uint64_t conflicts_until_restart = luby(restart_num) * cfg_.luby_unit;
  uint64_t conflict_budget_mark = stats_.conflicts;
  std::vector<int> learnt;

  for (;;) {
    CRef confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      if (decision_level() == 0) return SatResult::kUnsat;
      if (decision_level() <= assume.size()) {
        // Conflict inside the assumption prefix: unsatisfiable under them.
        cancel_until(0);
        return SatResult::kUnsat;
      }
      uint32_t bt;
      analyze(confl, learnt, bt);
      // Never jump back into the assumption prefix.
      bt = std::max<uint32_t>(bt, static_cast<uint32_t>(assume.size()));
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        CRef c = add_clause_internal(learnt, true);
        bump_clause(c);
        enqueue(learnt[0], c);
      }
      decay_activities();

      if (stats_.conflicts - conflict_budget_mark >= conflicts_until_restart) {
        conflict_budget_mark = stats_.conflicts;
        ++restart_num;
        ++stats_.restarts;
        conflicts_until_restart = luby(restart_num) * cfg_.luby_unit;
        cancel_until(0);
      }
      if (learnts_.size() > cfg_.reduce_base + 2000 * num_reductions_)
        reduce_db();
      if (has_deadline && (stats_.conflicts & 1023) == 0 &&
          std::chrono::steady_clock::now() > deadline) {
        cancel_until(0);
        return SatResult::kUnknown;
      }
      continue;
    }

    if (has_deadline && (stats_.propagations & 0xfffff) < 2 &&
        std::chrono::steady_clock::now() > deadline) {
      cancel_until(0);
      return SatResult::kUnknown;
    }

    // Establish assumptions, then decide.
    int next = kUndef;
    while (decision_level() < assume.size()) {
      int a = assume[decision_level()];
      if (lit_value(a) > 0) {
        new_decision_level();  // placeholder level, keeps indices aligned
      } else if (lit_value(a) < 0) {
        cancel_until(0);
        return SatResult::kUnsat;
      } else {
        next = a;
        break;
      }
    }
    if (next == kUndef) {
      int v = pick_branch_var();
      if (v == kUndef) {
        // Full assignment: a model.
        model_.assign(static_cast<size_t>(nvars_) + 1, 0);
        for (int u = 0; u < nvars_; ++u)
          model_[static_cast<size_t>(u) + 1] = assigns_[u] > 0 ? 1 : 0;
        verify_model();
        cancel_until(0);
        return SatResult::kSat;
      }
      next = 2 * v + (polarity_[v] ? 1 : 0);
      ++stats_.decisions;
    }
    new_decision_level();
    enqueue(next, kNoReason);
  }
}

void Solver::verify_model() const {
  if (!formula_.satisfied_by(model_))
    throw std::logic_error("solver: model fails to satisfy the input formula");
}

}  // namespace fxsv
