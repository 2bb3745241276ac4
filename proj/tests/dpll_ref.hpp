// Test-only reference solver: a plain recursive DPLL with unit propagation
// plus a DIMACS reader. Deliberately shares no code with the CDCL engine so
// export / solve paths can be cross-checked end to end.
#pragma once

#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dpll_ref {

struct Dimacs {
  int nvars = 0;
  std::vector<std::vector<int>> clauses;
};

inline Dimacs parse_dimacs(std::istream& in) {
  Dimacs d;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == 'c') continue;
    if (line[0] == 'p') {
      std::istringstream hs(line);
      std::string p, cnf;
      int nc;
      hs >> p >> cnf >> d.nvars >> nc;
      continue;
    }
    std::istringstream ls(line);
    std::vector<int> clause;
    int lit;
    while (ls >> lit && lit != 0) clause.push_back(lit);
    d.clauses.push_back(clause);
  }
  return d;
}

// values: 0 unassigned, 1 true, -1 false (index 1..nvars)
inline bool dpll(const Dimacs& d, std::vector<int>& values) {
  // Unit propagation to fixpoint.
  std::vector<std::pair<int, int>> trail;  // (var, previous value)
  for (;;) {
    bool changed = false;
    for (const auto& clause : d.clauses) {
      int unassigned = 0, last = 0;
      bool sat = false;
      for (int lit : clause) {
        int v = lit > 0 ? lit : -lit;
        int val = values[v] * (lit > 0 ? 1 : -1);
        if (val > 0) {
          sat = true;
          break;
        }
        if (val == 0) {
          ++unassigned;
          last = lit;
        }
      }
      if (sat) continue;
      if (unassigned == 0) {
        for (auto& [var, old] : trail) values[var] = old;
        return false;
      }
      if (unassigned == 1) {
        int v = last > 0 ? last : -last;
        trail.push_back({v, values[v]});
        values[v] = last > 0 ? 1 : -1;
        changed = true;
      }
    }
    if (!changed) break;
  }
  int branch = 0;
  for (int v = 1; v <= d.nvars; ++v)
    if (values[v] == 0) {
      branch = v;
      break;
    }
  if (branch == 0) {
    // All assigned; propagation loop guarantees no falsified clause.
    return true;
  }
  for (int phase : {1, -1}) {
    values[branch] = phase;
    if (dpll(d, values)) return true;
    values[branch] = 0;
  }
  for (auto& [var, old] : trail) values[var] = old;
  return false;
}

inline bool satisfiable(const Dimacs& d) {
  std::vector<int> values(static_cast<size_t>(d.nvars) + 1, 0);
  return dpll(d, values);
}

}  // namespace dpll_ref
