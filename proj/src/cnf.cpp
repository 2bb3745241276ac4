#include "fxsv/cnf.hpp"

#include <cstdlib>
#include <ostream>
#include <stdexcept>

namespace fxsv {

void CnfFormula::add_clause(std::span<const int> lits) {
  for (int l : lits) {
    if (l == 0 || std::abs(l) > nvars_)
      throw std::invalid_argument("add_clause: literal out of range");
  }
  lits_.insert(lits_.end(), lits.begin(), lits.end());
  offsets_.push_back(lits_.size());
}

void CnfFormula::export_dimacs(std::ostream& out) const {
  for (const auto& a : annotations_)
    out << "c input step=" << a.step << " index=" << a.index
        << " bit=" << a.bit << " var=" << a.var << "\n";
  out << "p cnf " << nvars_ << " " << clause_count() << "\n";
  for (size_t i = 0; i < clause_count(); ++i) {
    for (int l : clause(i)) out << l << " ";
    out << "0\n";
  }
}

bool CnfFormula::satisfied_by(std::span<const uint8_t> values) const {
  for (size_t i = 0; i < clause_count(); ++i) {
    bool sat = false;
    for (int l : clause(i)) {
      int v = std::abs(l);
      bool val = values[static_cast<size_t>(v)] != 0;
      if (l > 0 ? val : !val) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace fxsv
