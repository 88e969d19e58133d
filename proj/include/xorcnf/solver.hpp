#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "xorcnf/cnf.hpp"

namespace xorcnf {

/// Backtracking SAT oracle. Branches on variables in ascending index order
/// and runs unit propagation at every node, which keeps the translated
/// instances in this codebase cheap: once the original variables are
/// fixed, the auxiliary chains collapse by propagation alone. The value
/// preference only steers which model is found first.
class Solver {
 public:
  explicit Solver(const ClauseSet& F, bool prefer_true = false)
      : prefer_(prefer_true ? 1 : 0) {
    vars_ = F.variables();
    auto index_of = [this](Var v) {
      return static_cast<int>(std::lower_bound(vars_.begin(), vars_.end(), v) -
                              vars_.begin());
    };
    for (const Clause& c : F) {
      std::vector<int> enc;
      enc.reserve(c.size());
      for (Lit x : c) {
        int idx = index_of(var_of(x));
        enc.push_back(is_positive(x) ? (idx << 1) : ((idx << 1) | 1));
      }
      clauses_.push_back(std::move(enc));
    }
  }

  bool satisfiable() {
    std::vector<int8_t> assign(vars_.size(), -1);
    return search(assign);
  }

  std::optional<PartialAssignment> solve() {
    std::vector<int8_t> assign(vars_.size(), -1);
    if (!search(assign)) return std::nullopt;
    PartialAssignment model;
    for (size_t i = 0; i < vars_.size(); ++i)
      model.bind(vars_[i], assign[i] < 0 ? prefer_ == 1 : assign[i] == 1);
    return model;
  }

  static bool satisfiable(const ClauseSet& F) { return Solver(F).satisfiable(); }

  static std::optional<PartialAssignment> solve(const ClauseSet& F,
                                                bool prefer_true = false) {
    return Solver(F, prefer_true).solve();
  }

 private:
  // 0 = unresolved, 1 = satisfied, -1 = empty (conflict)
  int clause_state(const std::vector<int>& c, const std::vector<int8_t>& assign,
                   int* unit_out) const {
    int unassigned = 0;
    int unit = -1;
    for (int enc : c) {
      int v = enc >> 1;
      bool neg = enc & 1;
      if (assign[v] < 0) {
        ++unassigned;
        unit = enc;
      } else if ((assign[v] == 1) != neg) {
        return 1;
      }
    }
    if (unassigned == 0) return -1;
    if (unassigned == 1 && unit_out) *unit_out = unit;
    return 0;
  }

  // Returns false on conflict; appends assigned vars to trail.
  bool propagate(std::vector<int8_t>& assign, std::vector<int>& trail) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& c : clauses_) {
        int unit = -1;
        int st = clause_state(c, assign, &unit);
        if (st == -1) return false;
        if (st == 0 && unit >= 0) {
          int v = unit >> 1;
          assign[v] = (unit & 1) ? 0 : 1;
          trail.push_back(v);
          changed = true;
        }
      }
    }
    return true;
  }

  bool all_satisfied(const std::vector<int8_t>& assign) const {
    for (const auto& c : clauses_) {
      bool sat = false;
      for (int enc : c) {
        int v = enc >> 1;
        if (assign[v] >= 0 && (assign[v] == 1) != static_cast<bool>(enc & 1)) {
          sat = true;
          break;
        }
      }
      if (!sat) return false;
    }
    return true;
  }

  bool search(std::vector<int8_t>& assign) {
    std::vector<int> trail;
    if (!propagate(assign, trail)) {
      for (int v : trail) assign[v] = -1;
      return false;
    }
    if (all_satisfied(assign)) return true;
    int branch = -1;
    for (size_t i = 0; i < assign.size(); ++i) {
      if (assign[i] < 0) {
        branch = static_cast<int>(i);
        break;
      }
    }
    if (branch < 0) {
      for (int v : trail) assign[v] = -1;
      return false;
    }
    for (int8_t val : {prefer_, static_cast<int8_t>(1 - prefer_)}) {
      assign[branch] = val;
      if (search(assign)) return true;
      assign[branch] = -1;
    }
    for (int v : trail) assign[v] = -1;
    return false;
  }

  std::vector<Var> vars_;
  std::vector<std::vector<int>> clauses_;
  int8_t prefer_ = 0;
};

inline bool satisfiable(const ClauseSet& F) { return Solver::satisfiable(F); }
inline bool unsatisfiable(const ClauseSet& F) { return !Solver::satisfiable(F); }

/// Truth table of F over the given variables (which must cover var(F)).
/// Bit j of the index holds the value of vars[j]; entry = F satisfied.
inline std::vector<bool> satisfying_table(const ClauseSet& F,
                                          const std::vector<Var>& vars) {
  if (vars.size() > 24)
    throw CapExceeded("satisfying_table: more than 24 variables");
  std::map<Var, int> pos;
  for (size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = static_cast<int>(i);
  const size_t total = size_t{1} << vars.size();
  std::vector<bool> table(total, true);
  for (size_t a = 0; a < total; ++a) {
    for (const Clause& c : F) {
      bool sat = false;
      for (Lit x : c) {
        auto it = pos.find(var_of(x));
        if (it == pos.end())
          throw std::invalid_argument("satisfying_table: variable not in list");
        bool val = (a >> it->second) & 1;
        if (val == is_positive(x)) {
          sat = true;
          break;
        }
      }
      if (!sat) {
        table[a] = false;
        break;
      }
    }
  }
  return table;
}

}  // namespace xorcnf
