#pragma once

#include <functional>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/solver.hpp"

namespace xorcnf {

/// All literals over var(F), ascending variable index, positive first.
inline std::vector<Lit> literal_universe(const ClauseSet& F) {
  std::vector<Lit> lits;
  for (Var v : F.variables()) {
    lits.push_back(v);
    lits.push_back(-v);
  }
  return lits;
}

/// Unit-clause propagation to the fixed point. Returns {bot} iff a
/// contradiction is derived; the fixed point does not depend on the order
/// in which unit clauses are picked. The optional chooser (used by the
/// confluence tests) selects among the current unit literals.
inline ClauseSet rk1(
    const ClauseSet& F,
    const std::function<Lit(const std::vector<Lit>&)>& chooser = nullptr) {
  ClauseSet cur = F;
  for (;;) {
    if (cur.has_empty_clause()) return ClauseSet::contradiction();
    std::vector<Lit> units;
    for (const Clause& c : cur)
      if (c.size() == 1) units.push_back(c.literals()[0]);
    if (units.empty()) return cur;
    Lit pick = chooser ? chooser(units)
                       : *std::min_element(units.begin(), units.end(), lit_less);
    cur = apply(pick, true, cur);
  }
}

/// Generalized reduction r_k. Level 0 only reports a present empty clause,
/// level 1 is unit-clause propagation, level 2 is complete failed-literal
/// elimination, and level k assigns any literal whose opposite is refuted
/// by r_{k-1}. Literals are tried in ascending variable order, positive
/// polarity first; the fixed point is order-independent.
inline ClauseSet rk(unsigned k, const ClauseSet& F) {
  if (F.has_empty_clause()) return ClauseSet::contradiction();
  if (k == 0) return F;
  if (k == 1) return rk1(F);
  ClauseSet cur = F;
  for (;;) {
    if (cur.has_empty_clause()) return ClauseSet::contradiction();
    bool assigned = false;
    for (Lit x : literal_universe(cur)) {
      if (rk(k - 1, apply(x, false, cur)).is_contradiction()) {
        cur = apply(x, true, cur);
        assigned = true;
        break;
      }
    }
    if (!assigned) return cur;
  }
}

/// Applies every forced assignment, computed as r_{n(F)}.
inline ClauseSet r_infty(const ClauseSet& F) {
  return rk(static_cast<unsigned>(F.num_vars()), F);
}

/// Whether some literal is forced (the opposite assignment unsatisfiable).
/// Candidates are narrowed by intersecting models: a forced literal is
/// true in every model, so each satisfiable probe prunes the candidate set.
inline bool has_forced_literal(const ClauseSet& F) {
  if (F.is_top()) return false;
  auto model = Solver::solve(F);
  if (!model) return true;  // unsatisfiable: every literal is forced
  // A second model with the opposite value preference usually clears most
  // candidates at once.
  auto other0 = Solver::solve(F, true);
  std::vector<Lit> pending;
  for (Var v : F.variables()) {
    bool b = model->value_of_var(v).value_or(false);
    if (other0 && other0->value_of_var(v).value_or(false) != b) continue;
    pending.push_back(b ? v : -v);
  }
  while (!pending.empty()) {
    Lit x = pending.back();
    pending.pop_back();
    auto other = Solver::solve(apply(x, false, F));
    if (!other) return true;
    std::vector<Lit> keep;
    for (Lit y : pending)
      if (other->value(y).value_or(false)) keep.push_back(y);
    pending = std::move(keep);
  }
  return false;
}

/// Same fixed point by brute force: x is forced iff <x->0>*F is
/// unsatisfiable. Usable on larger clause-sets than the r_{n(F)} route.
inline ClauseSet r_infty_by_forcing(const ClauseSet& F) {
  ClauseSet cur = F;
  for (;;) {
    if (cur.has_empty_clause() || !satisfiable(cur))
      return ClauseSet::contradiction();
    bool assigned = false;
    for (Lit x : literal_universe(cur)) {
      if (!satisfiable(apply(x, false, cur))) {
        cur = apply(x, true, cur);
        assigned = true;
        break;
      }
    }
    if (!assigned) return cur;
  }
}

}  // namespace xorcnf
