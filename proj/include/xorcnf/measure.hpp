#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/prime.hpp"
#include "xorcnf/reduction.hpp"
#include "xorcnf/solver.hpp"
#include "xorcnf/translate.hpp"
#include "xorcnf/xor_system.hpp"

namespace xorcnf {

/// Resource bounds for the exhaustive measurements. Exceeding a cap is an
/// error, never a silent approximation.
struct Caps {
  Caps() = default;
  int dp_vars = 16;        // ternary-table engine: n(F) <= dp_vars
  int pc_vars = 18;        // propagation-completeness sweep: n(F) <= pc_vars
  int scope_vars = 14;     // per-scope sweeps: |V| <= scope_vars
  int width_vars = 12;     // resolution saturation: n(F) <= width_vars
  int prime_clauses = 16;  // subset method: c(F) <= prime_clauses
  int closure_terms = 24;  // subset-sum closure: m <= closure_terms
  int enum_vars = 16;      // representation check: n(S) <= enum_vars
  int forced_vars = 24;    // forced-literal scan: n(F) <= forced_vars
};

enum class MeasureKind { HD, PHD, WHD, WID };

inline const char* measure_name(MeasureKind k) {
  switch (k) {
    case MeasureKind::HD: return "hd";
    case MeasureKind::PHD: return "phd";
    case MeasureKind::WHD: return "whd";
    case MeasureKind::WID: return "wid";
  }
  return "?";
}

struct HardnessReport {
  MeasureKind kind = MeasureKind::HD;
  std::vector<Var> scope;
  bool absolute = false;
  int value = 0;
  /// An instantiation attaining the value; empty when the empty assignment
  /// already attains it.
  PartialAssignment witness;
  /// Lower-bound reports come from sampling and are labeled as such.
  bool lower_bound_only = false;
};

namespace detail {

class BitVec {
 public:
  explicit BitVec(size_t n = 0) : n_(n), words_((n + 63) / 64, 0) {}
  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
  void fill() { for (auto& w : words_) w = ~uint64_t{0}; }
  size_t size() const { return n_; }

 private:
  size_t n_;
  std::vector<uint64_t> words_;
};

// The space of all partial assignments over var(F), indexed as base-3
// vectors: digit 0 = unassigned, 1 = variable false, 2 = variable true.
// Holds, per instantiation, whether it contains the empty clause and
// whether it is unsatisfiable; refutation levels (the least k for which
// the level-k reduction derives the empty clause) are built on demand.
class InstantiationSpace {
 public:
  InstantiationSpace(const ClauseSet& F, int max_vars)
      : F_(F), vars_(F.variables()) {
    if (static_cast<int>(vars_.size()) > max_vars)
      throw CapExceeded("instantiation space over " +
                        std::to_string(vars_.size()) + " variables, cap is " +
                        std::to_string(max_vars));
    n_ = static_cast<int>(vars_.size());
    pow3_.resize(n_ + 1);
    pow3_[0] = 1;
    for (int i = 1; i <= n_; ++i) pow3_[i] = pow3_[i - 1] * 3;
    for (int i = 0; i < n_; ++i) pos_[vars_[i]] = i;
    build_falsified();
    build_unsat();
  }

  int num_vars() const { return n_; }
  const std::vector<Var>& vars() const { return vars_; }
  size_t space_size() const { return pow3_[n_]; }
  size_t pow3(int p) const { return pow3_[p]; }
  int position_of(Var v) const { return pos_.at(v); }

  bool falsified(size_t idx) const { return fals_.get(idx); }
  bool unsat(size_t idx) const { return u_.get(idx); }

  size_t index_of(const PartialAssignment& phi) const {
    size_t idx = 0;
    for (const auto& [v, b] : phi.bindings()) {
      auto it = pos_.find(v);
      if (it == pos_.end()) continue;  // outside var(F): no effect on F
      idx += (b ? 2u : 1u) * pow3_[it->second];
    }
    return idx;
  }

  PartialAssignment assignment_at(size_t idx) const {
    PartialAssignment phi;
    for (int p = 0; p < n_; ++p) {
      int d = static_cast<int>((idx / pow3_[p]) % 3);
      if (d) phi.bind(vars_[p], d == 2);
    }
    return phi;
  }

  ClauseSet clause_set_at(size_t idx) const {
    return apply(assignment_at(idx), F_);
  }

  void build_levels() {
    if (!level_.empty()) return;
    level_.assign(space_size(), kNoLevel);
    std::vector<int> digits(n_, 0);
    for (size_t idx = space_size(); idx-- > 0;) {
      // digits of idx maintained by countdown odometer
      if (idx + 1 != space_size()) {
        for (int p = 0; p < n_; ++p) {
          if (digits[p] > 0) {
            --digits[p];
            break;
          }
          digits[p] = 2;
        }
      } else {
        for (int p = 0; p < n_; ++p) digits[p] = 2;
      }
      if (!u_.get(idx)) continue;
      if (fals_.get(idx)) {
        level_[idx] = 0;
        continue;
      }
      int best = kNoLevel;
      for (int p = 0; p < n_; ++p) {
        if (digits[p] != 0) continue;
        int a = level_[idx + pow3_[p]];
        int b = level_[idx + 2 * pow3_[p]];
        int c = (a == b) ? a + 1 : std::max(a, b);
        best = std::min(best, c);
      }
      level_[idx] = static_cast<uint8_t>(best);
    }
  }

  /// Least k with the level-k reduction refuting the instantiation;
  /// defined only on unsatisfiable indices.
  int refutation_level(size_t idx) const { return level_[idx]; }
  bool levels_built() const { return !level_.empty(); }

  /// Fixed point of the level-k reduction started at idx. Returns the
  /// terminal index and whether the empty clause was reached.
  std::pair<size_t, bool> run_rk(size_t idx, int k) const {
    if (k >= 2 && level_.empty())
      throw std::logic_error("run_rk above level 1 needs the level table");
    for (;;) {
      if (fals_.get(idx)) return {idx, true};
      if (k == 0) return {idx, false};
      bool moved = false;
      for (int p = 0; p < n_ && !moved; ++p) {
        if ((idx / pow3_[p]) % 3 != 0) continue;
        for (int d = 2; d >= 1 && !moved; --d) {
          // d == 2 probes variable-true, i.e. the positive literal set
          // false is d == 1; positive polarity is probed first.
          size_t child = idx + static_cast<size_t>(3 - d) * pow3_[p];
          bool refuted = u_.get(child) && (k == 1 ? fals_.get(child)
                                                  : level_[child] <= k - 1);
          if (refuted) {
            idx += static_cast<size_t>(d) * pow3_[p];
            moved = true;
          }
        }
      }
      if (!moved) return {idx, false};
    }
  }

  /// Fixed point of applying all forced assignments.
  std::pair<size_t, bool> run_forcing(size_t idx) const {
    for (;;) {
      if (fals_.get(idx)) return {idx, true};
      if (u_.get(idx)) {
        // Unsatisfiable without an empty clause: walk down any branch;
        // every extension stays unsatisfiable and ends falsified.
        for (int p = 0; p < n_; ++p) {
          if ((idx / pow3_[p]) % 3 == 0) {
            idx += pow3_[p];
            break;
          }
        }
        continue;
      }
      bool moved = false;
      for (int p = 0; p < n_ && !moved; ++p) {
        if ((idx / pow3_[p]) % 3 != 0) continue;
        for (int d = 2; d >= 1 && !moved; --d) {
          size_t child = idx + static_cast<size_t>(3 - d) * pow3_[p];
          if (u_.get(child)) {
            idx += static_cast<size_t>(d) * pow3_[p];
            moved = true;
          }
        }
      }
      if (!moved) return {idx, false};
    }
  }

  /// Least k with rk-k reaching the all-forced fixed point from idx.
  int propagation_level(size_t idx) const {
    auto [ri, rbot] = run_forcing(idx);
    for (int k = 0; k <= n_ + 1; ++k) {
      auto [ti, tbot] = run_rk(idx, k);
      if (tbot != rbot) continue;
      if (tbot || ti == ri || clause_set_at(ti) == clause_set_at(ri)) return k;
    }
    throw std::logic_error("propagation level not reached by level n");
  }

  /// Least k such that rk-k from idx refutes an unsatisfiable
  /// instantiation, respectively leaves no forced literal on a scope
  /// variable. On the full scope this coincides with propagation_level.
  int propagation_level_scoped(size_t idx,
                               const std::vector<int>& scope_positions) const {
    if (level_.empty())
      throw std::logic_error("propagation levels need the level table");
    if (u_.get(idx)) return level_[idx];
    for (int k = 0;; ++k) {
      auto [ti, tbot] = run_rk(idx, k);
      (void)tbot;  // satisfiable: the run cannot reach the empty clause
      bool forced = false;
      for (int p : scope_positions) {
        if ((ti / pow3_[p]) % 3 != 0) continue;
        if (u_.get(ti + pow3_[p]) || u_.get(ti + 2 * pow3_[p])) {
          forced = true;
          break;
        }
      }
      if (!forced) return k;
      if (k > n_) throw std::logic_error("scoped propagation level not reached");
    }
  }

  static constexpr uint8_t kNoLevel = 0xFF;

 private:
  void build_falsified() {
    fals_ = BitVec(space_size());
    for (const Clause& c : F_) {
      if (c.empty()) {
        fals_.fill();
        return;
      }
      size_t base = 0;
      std::vector<int> free_pos;
      free_pos.reserve(n_);
      for (Lit x : c)
        base += (is_positive(x) ? 1u : 2u) * pow3_[pos_.at(var_of(x))];
      for (int p = 0; p < n_; ++p) {
        bool in_clause = false;
        for (Lit x : c)
          if (pos_.at(var_of(x)) == p) {
            in_clause = true;
            break;
          }
        if (!in_clause) free_pos.push_back(p);
      }
      mark_all(base, free_pos, fals_);
    }
  }

  void mark_all(size_t base, const std::vector<int>& free_pos, BitVec& out) {
    std::vector<int> digit(free_pos.size(), 0);
    for (;;) {
      out.set(base);
      size_t i = 0;
      for (; i < free_pos.size(); ++i) {
        if (digit[i] < 2) {
          ++digit[i];
          base += pow3_[free_pos[i]];
          break;
        }
        digit[i] = 0;
        base -= 2 * pow3_[free_pos[i]];
      }
      if (i == free_pos.size()) return;
    }
  }

  void build_unsat() {
    u_ = BitVec(space_size());
    for (size_t idx = space_size(); idx-- > 0;) {
      size_t rest = idx;
      int zero_pos = -1;
      for (int p = 0; p < n_; ++p) {
        int d = static_cast<int>(rest % 3);
        rest /= 3;
        if (d == 0) {
          zero_pos = p;
          break;
        }
      }
      if (zero_pos < 0) {
        // Total assignment: unsatisfiable iff some clause is falsified.
        if (fals_.get(idx)) u_.set(idx);
      } else {
        if (u_.get(idx + pow3_[zero_pos]) && u_.get(idx + 2 * pow3_[zero_pos]))
          u_.set(idx);
      }
    }
  }

  const ClauseSet F_;
  std::vector<Var> vars_;
  std::map<Var, int> pos_;
  int n_ = 0;
  std::vector<size_t> pow3_;
  BitVec fals_, u_;
  std::vector<uint8_t> level_;
};

// Iterates all 3^|positions| indices with support inside `positions`.
template <class Fn>
void for_each_scoped_index(const InstantiationSpace& space,
                           const std::vector<int>& positions, Fn fn) {
  std::vector<int> digit(positions.size(), 0);
  size_t idx = 0;
  for (;;) {
    fn(idx);
    size_t i = 0;
    for (; i < positions.size(); ++i) {
      if (digit[i] < 2) {
        ++digit[i];
        idx += space.pow3(positions[i]);
        break;
      }
      digit[i] = 0;
      idx -= 2 * space.pow3(positions[i]);
    }
    if (i == positions.size()) return;
  }
}

inline std::vector<int> scope_positions(const InstantiationSpace& space,
                                        const std::vector<Var>& scope) {
  std::vector<int> positions;
  for (Var v : scope) {
    auto& vars = space.vars();
    auto it = std::lower_bound(vars.begin(), vars.end(), v);
    if (it != vars.end() && *it == v)
      positions.push_back(space.position_of(v));
  }
  return positions;
}

// Enumerates partial assignments over `scope` for the solver-based engines.
template <class Fn>
void for_each_assignment(const std::vector<Var>& scope, Fn fn) {
  std::vector<int> digit(scope.size(), 0);
  for (;;) {
    PartialAssignment phi;
    for (size_t i = 0; i < scope.size(); ++i)
      if (digit[i]) phi.bind(scope[i], digit[i] == 2);
    fn(phi);
    size_t i = 0;
    for (; i < scope.size(); ++i) {
      if (digit[i] < 2) {
        ++digit[i];
        break;
      }
      digit[i] = 0;
    }
    if (i == scope.size()) return;
  }
}

inline bool scope_covers(const std::vector<Var>& scope,
                         const std::vector<Var>& vars) {
  return std::includes(scope.begin(), scope.end(), vars.begin(), vars.end());
}

// Whether a reduction result is final for the scoped propagation measure:
// the contradiction for unsatisfiable instantiations, otherwise free of
// forced assignments (on scope variables only, unless the scope is full).
inline bool scoped_propagation_done(const ClauseSet& R, bool instance_unsat,
                                    bool absolute, const std::vector<Var>& scope) {
  if (instance_unsat) return R.is_contradiction();
  if (absolute) return !has_forced_literal(R);
  for (Var v : scope) {
    bool present = false;
    for (const Clause& c : R)
      if (c.has_var(v)) {
        present = true;
        break;
      }
    if (!present) continue;
    if (!satisfiable(apply(v, false, R)) || !satisfiable(apply(v, true, R)))
      return false;
  }
  return true;
}

}  // namespace detail

/// Hardness over a scope V: the least k such that the level-k reduction
/// refutes every unsatisfiable instantiation of variables from V. For
/// n(F) within the table cap this runs over the full instantiation space;
/// for larger F with a small scope it falls back to a per-assignment sweep
/// that applies the reduction operators directly.
inline HardnessReport hardness(const ClauseSet& F, std::vector<Var> scope,
                               const Caps& caps = Caps()) {
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  HardnessReport rep;
  rep.kind = MeasureKind::HD;
  rep.scope = scope;
  rep.absolute = detail::scope_covers(scope, F.variables());

  if (static_cast<int>(F.num_vars()) <= caps.dp_vars) {
    detail::InstantiationSpace space(F, caps.dp_vars);
    space.build_levels();
    size_t best_idx = 0;
    int best = 0;
    auto visit = [&](size_t idx) {
      if (space.unsat(idx) && space.refutation_level(idx) > best) {
        best = space.refutation_level(idx);
        best_idx = idx;
      }
    };
    if (rep.absolute) {
      for (size_t idx = 0; idx < space.space_size(); ++idx) visit(idx);
    } else {
      detail::for_each_scoped_index(space, detail::scope_positions(space, scope),
                                    visit);
    }
    rep.value = best;
    rep.witness = space.assignment_at(best_idx);
    return rep;
  }
  if (static_cast<int>(scope.size()) > caps.scope_vars)
    throw CapExceeded("hardness: scope of " + std::to_string(scope.size()) +
                      " variables over a clause-set with " +
                      std::to_string(F.num_vars()) + " variables");
  int best = 0;
  PartialAssignment witness;
  detail::for_each_assignment(scope, [&](const PartialAssignment& phi) {
    ClauseSet G = apply(phi, F);
    if (G.has_empty_clause() || satisfiable(G)) return;
    while (!rk(static_cast<unsigned>(best), G).is_contradiction()) {
      ++best;
      witness = phi;
    }
  });
  rep.value = best;
  rep.witness = witness;
  return rep;
}

inline HardnessReport hardness(const ClauseSet& F, const Caps& caps = Caps()) {
  return hardness(F, F.variables(), caps);
}

/// Propagation hardness over a scope V: the least k such that, for every
/// instantiation of variables from V, the level-k reduction refutes it
/// when unsatisfiable and otherwise leaves no forced assignment on a
/// V-variable. For V covering var(F) this is exactly "the level-k
/// reduction reaches the all-forced fixed point"; on a strict sub-scope
/// the forced-assignment requirement is deliberately restricted to the
/// scope: chain translations routinely leave deep auxiliary equivalences
/// that no bounded reduction level recovers, while every consequence on
/// the scope variables is still propagated.
inline HardnessReport p_hardness(const ClauseSet& F, std::vector<Var> scope,
                                 const Caps& caps = Caps()) {
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  HardnessReport rep;
  rep.kind = MeasureKind::PHD;
  rep.scope = scope;
  rep.absolute = detail::scope_covers(scope, F.variables());

  if (static_cast<int>(F.num_vars()) <= caps.dp_vars) {
    detail::InstantiationSpace space(F, caps.dp_vars);
    space.build_levels();
    if (rep.absolute) {
      // An instantiation needing level k+1 is one that is no fixed point of
      // the forcing reduction yet is a fixed point of the level-k one: the
      // least unsatisfiable branch among its children tells the level.
      int best = 0;
      size_t best_idx = 0;
      std::vector<int> digits(space.num_vars(), 0);
      const size_t total = space.space_size();
      for (size_t idx = 0; idx < total; ++idx) {
        if (idx) {
          for (int p = 0; p < space.num_vars(); ++p) {
            if (digits[p] < 2) {
              ++digits[p];
              break;
            }
            digits[p] = 0;
          }
        }
        if (space.falsified(idx)) continue;
        bool needs_work = space.unsat(idx);
        int hstar = std::numeric_limits<int>::max();
        for (int p = 0; p < space.num_vars(); ++p) {
          if (digits[p] != 0) continue;
          for (int d = 1; d <= 2; ++d) {
            size_t child = idx + static_cast<size_t>(d) * space.pow3(p);
            if (space.unsat(child)) {
              needs_work = true;
              hstar = std::min(hstar, space.refutation_level(child));
            }
          }
        }
        if (!needs_work) continue;
        int cand = hstar + 1;
        if (cand > best) {
          best = cand;
          best_idx = idx;
        }
      }
      rep.value = best;
      rep.witness = space.assignment_at(best_idx);
      return rep;
    }
    int best = 0;
    size_t best_idx = 0;
    std::vector<int> positions = detail::scope_positions(space, scope);
    detail::for_each_scoped_index(space, positions, [&](size_t idx) {
      int v = space.propagation_level_scoped(idx, positions);
      if (v > best) {
        best = v;
        best_idx = idx;
      }
    });
    rep.value = best;
    rep.witness = space.assignment_at(best_idx);
    return rep;
  }

  if (static_cast<int>(scope.size()) > caps.scope_vars)
    throw CapExceeded("p_hardness: scope of " + std::to_string(scope.size()) +
                      " variables over a clause-set with " +
                      std::to_string(F.num_vars()) + " variables");
  int best = 0;
  PartialAssignment witness;
  detail::for_each_assignment(scope, [&](const PartialAssignment& phi) {
    ClauseSet G = apply(phi, F);
    bool g_unsat = !satisfiable(G);
    auto good = [&](int k) {
      return detail::scoped_propagation_done(rk(static_cast<unsigned>(k), G),
                                             g_unsat, rep.absolute, scope);
    };
    if (good(best)) return;
    int k = best;
    do {
      ++k;
      if (k > static_cast<int>(F.num_vars()) + 1)
        throw std::logic_error("propagation level not reached by level n");
    } while (!good(k));
    best = k;
    witness = phi;
  });
  rep.value = best;
  rep.witness = witness;
  return rep;
}

inline HardnessReport p_hardness(const ClauseSet& F, const Caps& caps = Caps()) {
  return p_hardness(F, F.variables(), caps);
}

struct PcCheck {
  bool complete = true;
  /// When not complete: an instantiation that unit propagation leaves with
  /// a forced assignment (or an undetected contradiction).
  PartialAssignment counterexample;
};

/// Membership in the propagation-complete class (absolute propagation
/// hardness at most 1), decided without refutation-level tables: the
/// clause-set fails iff some instantiation with neither an empty clause
/// nor a unit clause is unsatisfiable or has a forced literal. Handles a
/// couple more variables than the exact measure.
inline PcCheck is_propagation_complete(const ClauseSet& F, const Caps& caps = Caps()) {
  detail::InstantiationSpace space(F, caps.pc_vars);
  PcCheck out;
  const int n = space.num_vars();
  std::vector<int> digits(n, 0);
  const size_t total = space.space_size();
  for (size_t idx = 0; idx < total; ++idx) {
    if (idx) {
      for (int p = 0; p < n; ++p) {
        if (digits[p] < 2) {
          ++digits[p];
          break;
        }
        digits[p] = 0;
      }
    }
    if (space.falsified(idx)) continue;
    bool unit = false;
    bool forced = false;
    for (int p = 0; p < n && !unit; ++p) {
      if (digits[p] != 0) continue;
      size_t c1 = idx + space.pow3(p);
      size_t c2 = c1 + space.pow3(p);
      if (space.falsified(c1) || space.falsified(c2)) {
        unit = true;
        break;
      }
      if (space.unsat(c1) || space.unsat(c2)) forced = true;
    }
    if (unit) continue;  // unit propagation still moves from here
    if (space.unsat(idx) || forced) {
      out.complete = false;
      out.counterexample = space.assignment_at(idx);
      return out;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Width measures by resolution saturation.
// ---------------------------------------------------------------------------

namespace detail {

struct MaskedClause {
  uint32_t pos = 0, neg = 0;
  int len() const { return __builtin_popcount(pos) + __builtin_popcount(neg); }
  bool subsumes(const MaskedClause& o) const {
    return (pos & ~o.pos) == 0 && (neg & ~o.neg) == 0;
  }
  bool operator==(const MaskedClause& o) const {
    return pos == o.pos && neg == o.neg;
  }
};

inline bool masked_resolve(const MaskedClause& a, const MaskedClause& b,
                           MaskedClause* out) {
  uint32_t clash = (a.pos & b.neg) | (a.neg & b.pos);
  if (__builtin_popcount(clash) != 1) return false;
  out->pos = (a.pos | b.pos) & ~clash;
  out->neg = (a.neg | b.neg) & ~clash;
  return true;
}

inline std::vector<MaskedClause> to_masked(const ClauseSet& F,
                                           const std::vector<Var>& vars) {
  std::map<Var, int> pos;
  for (size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = static_cast<int>(i);
  std::vector<MaskedClause> out;
  for (const Clause& c : F) {
    MaskedClause m;
    for (Lit x : c) {
      int p = pos.at(var_of(x));
      if (is_positive(x))
        m.pos |= uint32_t{1} << p;
      else
        m.neg |= uint32_t{1} << p;
    }
    out.push_back(m);
  }
  return out;
}

// Saturation under resolution with subsumption elimination. `parent_cond`
// gates each step on its two parents; `keep` gates derived clauses.
template <class ParentCond, class Keep>
bool saturate_to_empty(std::vector<MaskedClause> pool, ParentCond parent_ok,
                       Keep keep) {
  std::vector<bool> alive(pool.size(), true);
  for (const auto& m : pool)
    if (m.len() == 0) return true;
  auto add = [&](const MaskedClause& c) {
    for (size_t i = 0; i < pool.size(); ++i)
      if (alive[i] && pool[i].subsumes(c)) return;
    for (size_t i = 0; i < pool.size(); ++i)
      if (alive[i] && c.subsumes(pool[i])) alive[i] = false;
    pool.push_back(c);
    alive.push_back(true);
  };
  for (size_t i = 0; i < pool.size(); ++i) {
    if (!alive[i]) continue;
    for (size_t j = 0; j < i; ++j) {
      if (!alive[i]) break;
      if (!alive[j]) continue;
      if (!parent_ok(pool[i], pool[j])) continue;
      MaskedClause res;
      if (!masked_resolve(pool[i], pool[j], &res)) continue;
      if (res.len() == 0) return true;
      if (keep(res)) add(res);
    }
  }
  return false;
}

// Least k such that resolution restricted to steps with one parent of
// length at most k derives the empty clause; requires G unsatisfiable.
inline int whd_unsat(const ClauseSet& G, int max_vars) {
  if (G.has_empty_clause()) return 0;
  const auto vars = G.variables();
  if (static_cast<int>(vars.size()) > max_vars)
    throw CapExceeded("asymmetric-width saturation over " +
                      std::to_string(vars.size()) + " variables");
  auto masked = to_masked(G, vars);
  for (int k = 1; k <= static_cast<int>(vars.size()); ++k) {
    if (saturate_to_empty(
            masked,
            [k](const MaskedClause& a, const MaskedClause& b) {
              return a.len() <= k || b.len() <= k;
            },
            [](const MaskedClause&) { return true; }))
      return k;
  }
  throw std::logic_error("unsatisfiable clause-set not refuted at level n");
}

// Least k such that a refutation exists all of whose clauses, axioms
// included, have length at most k; requires G unsatisfiable.
inline int wid_unsat(const ClauseSet& G, int max_vars) {
  if (G.has_empty_clause()) return 0;
  const auto vars = G.variables();
  if (static_cast<int>(vars.size()) > max_vars)
    throw CapExceeded("symmetric-width saturation over " +
                      std::to_string(vars.size()) + " variables");
  auto masked = to_masked(G, vars);
  for (int k = 1; k <= static_cast<int>(vars.size()); ++k) {
    std::vector<MaskedClause> axioms;
    for (const auto& m : masked)
      if (m.len() <= k) axioms.push_back(m);
    if (saturate_to_empty(
            axioms, [](const MaskedClause&, const MaskedClause&) { return true; },
            [k](const MaskedClause& c) { return c.len() <= k; }))
      return k;
  }
  throw std::logic_error("unsatisfiable clause-set not refuted at width n");
}

template <class PerInstance>
HardnessReport width_measure(MeasureKind kind, const ClauseSet& F,
                             std::vector<Var> scope, const Caps& caps,
                             PerInstance value_of) {
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  HardnessReport rep;
  rep.kind = kind;
  rep.scope = scope;
  rep.absolute = scope_covers(scope, F.variables());
  if (F.is_top()) return rep;
  if (!satisfiable(F)) {
    rep.value = value_of(F);
    return rep;
  }
  if (static_cast<int>(scope.size()) > caps.scope_vars)
    throw CapExceeded("width sweep over scope of " +
                      std::to_string(scope.size()) + " variables");
  int best = 0;
  PartialAssignment witness;
  for_each_assignment(scope, [&](const PartialAssignment& phi) {
    ClauseSet G = apply(phi, F);
    if (satisfiable(G)) return;
    int v = value_of(G);
    if (v > best) {
      best = v;
      witness = phi;
    }
  });
  rep.value = best;
  rep.witness = witness;
  return rep;
}

}  // namespace detail

/// Asymmetric width over a scope: for unsatisfiable F the least k with a
/// k-resolution refutation (each step has a parent of length at most k);
/// for satisfiable F the maximum over unsatisfiable instantiations of
/// scope variables. whd(top) = 0.
inline HardnessReport w_hardness(const ClauseSet& F, std::vector<Var> scope,
                                 const Caps& caps = Caps()) {
  return detail::width_measure(MeasureKind::WHD, F, std::move(scope), caps,
                               [&](const ClauseSet& G) {
                                 return detail::whd_unsat(G, caps.width_vars);
                               });
}

inline HardnessReport w_hardness(const ClauseSet& F, const Caps& caps = Caps()) {
  return w_hardness(F, F.variables(), caps);
}

/// Symmetric width: as w_hardness but every clause of the refutation,
/// axioms included, must have length at most k.
inline HardnessReport sym_width(const ClauseSet& F, std::vector<Var> scope,
                                const Caps& caps = Caps()) {
  return detail::width_measure(MeasureKind::WID, F, std::move(scope), caps,
                               [&](const ClauseSet& G) {
                                 return detail::wid_unsat(G, caps.width_vars);
                               });
}

inline HardnessReport sym_width(const ClauseSet& F, const Caps& caps = Caps()) {
  return sym_width(F, F.variables(), caps);
}

// ---------------------------------------------------------------------------
// Forced assignments, autarkies, representation checking.
// ---------------------------------------------------------------------------

struct ForcedLiterals {
  /// Unsatisfiable clause-set: every literal whatsoever is forced.
  bool all = false;
  std::vector<Lit> lits;
};

/// All literals x with <x->0> * F unsatisfiable.
inline ForcedLiterals forced_literals(const ClauseSet& F, const Caps& caps = Caps()) {
  if (static_cast<int>(F.num_vars()) > caps.forced_vars)
    throw CapExceeded("forced_literals over " + std::to_string(F.num_vars()) +
                      " variables, cap is " + std::to_string(caps.forced_vars));
  ForcedLiterals out;
  if (!satisfiable(F)) {
    out.all = true;
    return out;
  }
  for (Lit x : literal_universe(F))
    if (!satisfiable(apply(x, false, F))) out.lits.push_back(x);
  return out;
}

/// true iff every clause sharing a variable with phi is satisfied by phi.
inline bool is_autarky(const PartialAssignment& phi, const ClauseSet& F) {
  for (const Clause& c : F) {
    bool touched = false;
    bool satisfied = false;
    for (Lit x : c) {
      auto v = phi.value(x);
      if (v) {
        touched = true;
        if (*v) {
          satisfied = true;
          break;
        }
      }
    }
    if (touched && !satisfied) return false;
  }
  return true;
}

struct VerifyResult {
  bool ok = true;
  bool complete = true;  // false for sampled verification
  std::optional<PartialAssignment> witness;
  std::string detail;
};

/// Model projection: the projections of the satisfying total assignments
/// of F onto var(S) must equal the solution set of S. Enumerates all
/// 2^n(S) totals, deciding extension by the SAT oracle.
inline VerifyResult verify_representation(const XorSystem& S, const ClauseSet& F,
                                          const Caps& caps = Caps()) {
  const std::vector<Var> vars = S.variables();
  if (static_cast<int>(vars.size()) > std::min(caps.enum_vars, 30))
    throw CapExceeded("verify_representation over " +
                      std::to_string(vars.size()) + " variables, cap is " +
                      std::to_string(caps.enum_vars));
  VerifyResult res;
  const size_t total = size_t{1} << vars.size();
  for (size_t a = 0; a < total; ++a) {
    PartialAssignment sigma;
    for (size_t j = 0; j < vars.size(); ++j) sigma.bind(vars[j], (a >> j) & 1);
    bool xor_ok = S.satisfied_by(sigma);
    bool cnf_ok = satisfiable(apply(sigma, F));
    if (xor_ok != cnf_ok) {
      res.ok = false;
      res.witness = sigma;
      res.detail = xor_ok ? "solution of the system not extendable in the CNF"
                          : "CNF model projects onto a non-solution";
      return res;
    }
  }
  return res;
}

inline VerifyResult verify_representation(const XorSystem& S,
                                          const TranslationResult& R,
                                          const Caps& caps = Caps()) {
  return verify_representation(S, R.cnf, caps);
}

/// Sampled variant: checks N random totals and reports an explicitly
/// incomplete verdict.
inline VerifyResult verify_representation_sampled(const XorSystem& S,
                                                  const ClauseSet& F,
                                                  size_t samples, uint64_t seed) {
  const std::vector<Var> vars = S.variables();
  std::mt19937_64 rng(seed);
  VerifyResult res;
  res.complete = false;
  for (size_t s = 0; s < samples; ++s) {
    PartialAssignment sigma;
    for (Var v : vars) sigma.bind(v, rng() & 1);
    bool xor_ok = S.satisfied_by(sigma);
    bool cnf_ok = satisfiable(apply(sigma, F));
    if (xor_ok != cnf_ok) {
      res.ok = false;
      res.witness = sigma;
      res.detail = xor_ok ? "solution of the system not extendable in the CNF"
                          : "CNF model projects onto a non-solution";
      return res;
    }
  }
  return res;
}

/// Monte-Carlo lower bound on a measure: samples N assignments over the
/// scope and evaluates the per-instantiation value. Always labeled a lower
/// bound.
inline HardnessReport measure_sampled(MeasureKind kind, const ClauseSet& F,
                                      std::vector<Var> scope, size_t samples,
                                      uint64_t seed, const Caps& caps = Caps()) {
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  HardnessReport rep;
  rep.kind = kind;
  rep.scope = scope;
  rep.absolute = detail::scope_covers(scope, F.variables());
  rep.lower_bound_only = true;
  std::mt19937_64 rng(seed);
  for (size_t s = 0; s < samples; ++s) {
    PartialAssignment phi;
    for (Var v : scope) {
      switch (rng() % 3) {
        case 1: phi.bind(v, false); break;
        case 2: phi.bind(v, true); break;
        default: break;
      }
    }
    ClauseSet G = apply(phi, F);
    int v = 0;
    switch (kind) {
      case MeasureKind::HD: {
        if (G.has_empty_clause() || satisfiable(G)) continue;
        while (!rk(static_cast<unsigned>(v), G).is_contradiction()) ++v;
        break;
      }
      case MeasureKind::PHD: {
        bool g_unsat = !satisfiable(G);
        while (!detail::scoped_propagation_done(rk(static_cast<unsigned>(v), G),
                                                g_unsat, rep.absolute, scope)) {
          ++v;
          if (v > static_cast<int>(F.num_vars()) + 1)
            throw std::logic_error("propagation level not reached by level n");
        }
        break;
      }
      case MeasureKind::WHD: {
        if (satisfiable(G)) continue;
        v = detail::whd_unsat(G, caps.width_vars);
        break;
      }
      case MeasureKind::WID: {
        if (satisfiable(G)) continue;
        v = detail::wid_unsat(G, caps.width_vars);
        break;
      }
    }
    if (v > rep.value) {
      rep.value = v;
      rep.witness = phi;
    }
  }
  return rep;
}

}  // namespace xorcnf
