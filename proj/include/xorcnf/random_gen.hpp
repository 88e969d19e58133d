#pragma once

#include <random>
#include <set>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/xor_system.hpp"

namespace xorcnf {

/// All randomness in the toolkit flows through one 64-bit-seeded
/// mersenne-twister generator (std::mt19937_64); identical seeds give
/// byte-identical outputs.
using Rng = std::mt19937_64;

inline size_t rand_below(Rng& rng, size_t n) {
  return std::uniform_int_distribution<size_t>(0, n - 1)(rng);
}

/// A random system: m constraints over variables 1..n, each a uniformly
/// chosen nonempty variable subset of size at most max_len with a random
/// right-hand side. Duplicate rows collapse, so the result may have fewer
/// than m constraints.
inline XorSystem random_system(int m, int n, Rng& rng, int max_len = 0) {
  if (max_len <= 0 || max_len > n) max_len = n;
  std::vector<XorConstraint> rows;
  for (int i = 0; i < m; ++i) {
    int len = 1 + static_cast<int>(rand_below(rng, static_cast<size_t>(max_len)));
    std::set<Var> vars;
    while (static_cast<int>(vars.size()) < len)
      vars.insert(static_cast<Var>(1 + rand_below(rng, static_cast<size_t>(n))));
    rows.emplace_back(std::vector<Var>(vars.begin(), vars.end()),
                      static_cast<int>(rng() & 1));
  }
  return XorSystem(std::move(rows));
}

/// Random satisfiable system: rejection-samples random_system.
inline XorSystem random_satisfiable_system(int m, int n, Rng& rng,
                                           int max_len = 0) {
  for (;;) {
    XorSystem S = random_system(m, n, rng, max_len);
    if (xor_sat(S).sat) return S;
  }
}

/// Random system whose incidence graph is a forest: each constraint picks
/// at most one variable that is already in use (attaching the new
/// constraint as a leaf) plus fresh variables, within a total budget of
/// max_total_vars distinct variables.
inline XorSystem random_acyclic_system(int m, int max_total_vars, Rng& rng) {
  std::vector<XorConstraint> rows;
  std::vector<Var> used;
  Var next_var = 1;
  for (int i = 0; i < m; ++i) {
    int budget = max_total_vars - static_cast<int>(used.size());
    if (budget <= 0) break;
    std::vector<Var> vars;
    bool attach = !used.empty() && (rng() & 1);
    if (attach) vars.push_back(used[rand_below(rng, used.size())]);
    int fresh_max = std::min(budget, 5);
    int want_fresh = std::max<int>(vars.empty() ? 1 : 0,
                                   static_cast<int>(rand_below(
                                       rng, static_cast<size_t>(fresh_max) + 1)));
    for (int f = 0; f < want_fresh; ++f) {
      vars.push_back(next_var);
      used.push_back(next_var);
      ++next_var;
    }
    rows.emplace_back(std::move(vars), static_cast<int>(rng() & 1));
  }
  return XorSystem(std::move(rows));
}

/// Random pair of constraints sharing exactly `shared` variables, each
/// with at least one private variable, over variables 1..total.
inline std::pair<XorConstraint, XorConstraint> random_shared_pair(
    int shared, int total, Rng& rng) {
  if (shared + 2 > total)
    throw std::invalid_argument("random_shared_pair: no room for private variables");
  std::vector<Var> perm;
  for (Var v = 1; v <= total; ++v) perm.push_back(v);
  std::shuffle(perm.begin(), perm.end(), rng);
  // First `shared` go to both; the rest is split 1.. / ..1 at a random cut.
  int rest = total - shared;
  int cut = 1 + static_cast<int>(rand_below(rng, static_cast<size_t>(rest - 1)));
  std::vector<Var> c(perm.begin(), perm.begin() + shared);
  std::vector<Var> d = c;
  c.insert(c.end(), perm.begin() + shared, perm.begin() + shared + cut);
  d.insert(d.end(), perm.begin() + shared + cut, perm.end());
  return {XorConstraint(std::move(c), static_cast<int>(rng() & 1)),
          XorConstraint(std::move(d), static_cast<int>(rng() & 1))};
}

/// Random clause-set: c clauses over variables 1..n with lengths in
/// [1, max_len], uniform polarities.
inline ClauseSet random_clause_set(int c, int n, Rng& rng, int max_len = 0) {
  if (max_len <= 0 || max_len > n) max_len = n;
  std::vector<Clause> clauses;
  for (int i = 0; i < c; ++i) {
    int len = 1 + static_cast<int>(rand_below(rng, static_cast<size_t>(max_len)));
    std::set<Var> vars;
    while (static_cast<int>(vars.size()) < len)
      vars.insert(static_cast<Var>(1 + rand_below(rng, static_cast<size_t>(n))));
    std::vector<Lit> lits;
    for (Var v : vars) lits.push_back((rng() & 1) ? v : -v);
    clauses.push_back(Clause(std::move(lits)));
  }
  return ClauseSet(std::move(clauses));
}

/// Random partial assignment over the given variables; each variable is
/// unassigned, false, or true with equal probability.
inline PartialAssignment random_assignment(const std::vector<Var>& vars, Rng& rng) {
  PartialAssignment phi;
  for (Var v : vars) {
    switch (rng() % 3) {
      case 1: phi.bind(v, false); break;
      case 2: phi.bind(v, true); break;
      default: break;
    }
  }
  return phi;
}

}  // namespace xorcnf
