#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace fxsv {

// Maps a CNF variable to the input-symbol bit it encodes.
struct InputBitAnnotation {
  int var = 0;          // 1-based CNF variable
  uint32_t step = 0;    // time step of u
  uint32_t index = 0;   // input component
  uint32_t bit = 0;     // bit position, 0 = LSB
};

// Clause database in flat storage. Literals are nonzero signed ints with
// magnitude <= variable_count. An intentionally empty clause is allowed and
// makes the formula unsatisfiable.
class CnfFormula {
 public:
  int variable_count() const { return nvars_; }
  size_t clause_count() const { return offsets_.size() - 1; }

  int new_var() { return ++nvars_; }
  void add_clause(std::span<const int> lits);
  void add_clause(std::initializer_list<int> lits) {
    add_clause(std::span<const int>(lits.begin(), lits.size()));
  }

  std::span<const int> clause(size_t i) const {
    return {lits_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }

  const std::vector<InputBitAnnotation>& annotations() const { return annotations_; }
  void annotate(const InputBitAnnotation& a) { annotations_.push_back(a); }

  // DIMACS CNF: annotation comments, then `p cnf <vars> <clauses>`, then one
  // zero-terminated clause per line.
  void export_dimacs(std::ostream& out) const;

  // True when the assignment (values[var] != 0, 1-based) satisfies every
  // clause.
  bool satisfied_by(std::span<const uint8_t> values) const;

 private:
  int nvars_ = 0;
  std::vector<int32_t> lits_;
  std::vector<size_t> offsets_{0};
  std::vector<InputBitAnnotation> annotations_;
};

}  // namespace fxsv
