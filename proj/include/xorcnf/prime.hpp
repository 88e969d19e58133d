#pragma once

#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/solver.hpp"

namespace xorcnf {

/// true iff F entails the clause c, i.e. F with all literals of c set
/// false is unsatisfiable.
inline bool is_implicate(const ClauseSet& F, const Clause& c) {
  PartialAssignment phi;
  for (Lit x : c) phi.set(-x);
  return !satisfiable(apply(phi, F));
}

/// Prime implicates by subset enumeration: for every nonempty G included
/// in F take the clause of pure literals of G, keep those that are
/// implicates of F, and subsumption-eliminate. At most 2^c(F)-1 clauses.
inline ClauseSet prime_implicates(const ClauseSet& F, int max_clauses = 16) {
  const size_t m = F.num_clauses();
  if (m > static_cast<size_t>(std::min(max_clauses, 62)))
    throw CapExceeded("prime_implicates: " + std::to_string(m) +
                      " clauses, cap is " + std::to_string(max_clauses));
  std::vector<Clause> candidates;
  const auto& clauses = F.clauses();
  for (uint64_t mask = 1; mask < (uint64_t{1} << m); ++mask) {
    // Pure literals of the subset: occur in one polarity only.
    std::map<Var, int> polarity;  // bit0 positive occurrence, bit1 negative
    for (size_t i = 0; i < m; ++i) {
      if (!(mask & (uint64_t{1} << i))) continue;
      for (Lit x : clauses[i]) polarity[var_of(x)] |= is_positive(x) ? 1 : 2;
    }
    std::vector<Lit> pure;
    for (auto& [v, p] : polarity) {
      if (p == 1) pure.push_back(v);
      if (p == 2) pure.push_back(-v);
    }
    Clause c(std::move(pure));
    if (is_implicate(F, c)) candidates.push_back(std::move(c));
  }
  return subsumption_eliminate(ClauseSet(std::move(candidates)));
}

namespace detail {

inline bool try_resolve(const Clause& a, const Clause& b, Clause* out) {
  Var clash_var = 0;
  for (Lit x : a) {
    if (b.contains(-x)) {
      if (clash_var) return false;  // two clashes: resolvent is tautological
      clash_var = var_of(x);
    }
  }
  if (!clash_var) return false;
  std::vector<Lit> lits;
  lits.reserve(a.size() + b.size() - 2);
  for (Lit x : a)
    if (var_of(x) != clash_var) lits.push_back(x);
  for (Lit x : b)
    if (var_of(x) != clash_var) lits.push_back(x);
  std::sort(lits.begin(), lits.end(), lit_less);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  *out = Clause::from_sorted_unchecked(std::move(lits));
  return true;
}

}  // namespace detail

/// Prime implicates as the subsumption-minimal closure of F under
/// resolution. Exponential in general; meant as the independent second
/// route at small sizes.
inline ClauseSet prime_implicates_by_resolution(const ClauseSet& F) {
  std::vector<Clause> pool(F.begin(), F.end());
  std::vector<bool> alive(pool.size(), true);
  auto add = [&](const Clause& c) -> bool {
    for (size_t i = 0; i < pool.size(); ++i)
      if (alive[i] && pool[i].subsumes(c)) return false;
    for (size_t i = 0; i < pool.size(); ++i)
      if (alive[i] && c.subsumes(pool[i])) alive[i] = false;
    pool.push_back(c);
    alive.push_back(true);
    return true;
  };
  // Self-subsumption inside the axioms first.
  for (size_t i = 0; i < pool.size(); ++i)
    for (size_t j = 0; j < pool.size(); ++j)
      if (i != j && alive[i] && alive[j] && pool[i].subsumes(pool[j]) &&
          pool[i] != pool[j])
        alive[j] = false;
  for (size_t i = 1; i < pool.size(); ++i) {
    if (!alive[i]) continue;
    for (size_t j = 0; j < i; ++j) {
      if (!alive[i]) break;  // subsumed by a resolvent added meanwhile
      if (!alive[j]) continue;
      Clause res;
      if (detail::try_resolve(pool[i], pool[j], &res)) add(res);
    }
  }
  std::vector<Clause> out;
  for (size_t i = 0; i < pool.size(); ++i)
    if (alive[i]) out.push_back(pool[i]);
  return subsumption_eliminate(ClauseSet(std::move(out)));
}

}  // namespace xorcnf
