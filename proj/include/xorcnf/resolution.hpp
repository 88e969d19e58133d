#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/structure.hpp"

namespace xorcnf {

/// A resolution derivation: a sequence of clauses, each an axiom or the
/// resolvent of two earlier steps. A refutation ends in the empty clause.
struct ResolutionProof {
  struct Step {
    Clause clause;
    int parent1 = -1;  // -1,-1 marks an axiom
    int parent2 = -1;
    bool axiom() const { return parent1 < 0; }
  };
  std::vector<Step> steps;

  void add_axiom(Clause c) { steps.push_back({std::move(c), -1, -1}); }
  int add_resolvent(Clause c, int p1, int p2) {
    steps.push_back({std::move(c), p1, p2});
    return static_cast<int>(steps.size()) - 1;
  }
  size_t size() const { return steps.size(); }
};

struct ProofCheck {
  bool ok = true;
  std::string error;
  size_t bad_step = 0;
  /// Width statistics over the whole derivation.
  int max_clause_length = 0;
  /// Maximum over all resolution steps of the shorter parent's length
  /// (the level needed for asymmetric width).
  int max_shorter_parent = 0;
  bool ends_with_empty_clause = false;
};

/// Resolvent of two clauses clashing in exactly one literal.
inline bool resolvable(const Clause& a, const Clause& b, Clause* out) {
  Var clash = 0;
  for (Lit x : a) {
    if (b.contains(-x)) {
      if (clash) return false;
      clash = var_of(x);
    }
  }
  if (!clash) return false;
  std::vector<Lit> lits;
  for (Lit x : a)
    if (var_of(x) != clash) lits.push_back(x);
  for (Lit x : b)
    if (var_of(x) != clash) lits.push_back(x);
  std::sort(lits.begin(), lits.end(), lit_less);
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  *out = Clause::from_sorted_unchecked(std::move(lits));
  return true;
}

inline Clause resolve(const Clause& a, const Clause& b) {
  Clause out;
  if (!resolvable(a, b, &out))
    throw std::invalid_argument("clauses do not clash in exactly one literal: " +
                                a.str() + " vs " + b.str());
  return out;
}

/// Validates a derivation against the axiom set F. Strict mode requires
/// every axiom to be a member of F; otherwise an axiom may be subsumed by
/// some clause of F.
inline ProofCheck check_resolution(const ResolutionProof& proof, const ClauseSet& F,
                                   bool strict = true) {
  ProofCheck res;
  for (size_t i = 0; i < proof.steps.size(); ++i) {
    const auto& step = proof.steps[i];
    res.max_clause_length =
        std::max(res.max_clause_length, static_cast<int>(step.clause.size()));
    if (step.axiom()) {
      bool ok = F.contains(step.clause);
      if (!ok && !strict) {
        for (const Clause& c : F)
          if (c.subsumes(step.clause)) {
            ok = true;
            break;
          }
      }
      if (!ok) {
        res.ok = false;
        res.bad_step = i;
        res.error = "axiom " + step.clause.str() + " is not in the clause-set";
        return res;
      }
      continue;
    }
    if (step.parent1 >= static_cast<int>(i) || step.parent2 >= static_cast<int>(i) ||
        step.parent2 < 0) {
      res.ok = false;
      res.bad_step = i;
      res.error = "parent reference out of range";
      return res;
    }
    const Clause& a = proof.steps[step.parent1].clause;
    const Clause& b = proof.steps[step.parent2].clause;
    Clause expect;
    if (!resolvable(a, b, &expect)) {
      res.ok = false;
      res.bad_step = i;
      res.error = "parents " + a.str() + " and " + b.str() +
                  " do not clash in exactly one literal";
      return res;
    }
    if (expect != step.clause) {
      res.ok = false;
      res.bad_step = i;
      res.error = "step claims " + step.clause.str() + " but the resolvent is " +
                  expect.str();
      return res;
    }
    res.max_shorter_parent = std::max(
        res.max_shorter_parent,
        static_cast<int>(std::min(a.size(), b.size())));
  }
  res.ends_with_empty_clause =
      !proof.steps.empty() && proof.steps.back().clause.empty();
  return res;
}

namespace detail {

// Indices of the chain variables of the two split constraints of
// tn_translation(n): y_j holds the prefix v1+...+vj of the rhs-0 chain,
// y'_j of the rhs-1 chain, for 2 <= j <= n-1.
inline Var tn_y(int n, int j) { return n + (j - 1); }
inline Var tn_yp(int n, int j) { return (2 * n - 2) + (j - 1); }

}  // namespace detail

/// The explicit dag refutation of the clause-set of gen_tn(n): derive the
/// equivalence clauses between the two chains at the top link, push them
/// down the chains with ten resolvents per level, and finish with an
/// eleven-clause endgame on the first links. Uses 18n - 29 clauses in
/// total (axioms included), none longer than 3.
inline ResolutionProof build_tn_refutation(int n) {
  if (n < 3) throw std::invalid_argument("refutation builder needs n >= 3");
  ResolutionProof proof;
  ClauseSet tn = gen_tn(n);
  std::map<Clause, int> axiom_index;
  for (const Clause& c : tn) {
    axiom_index[c] = static_cast<int>(proof.steps.size());
    proof.add_axiom(c);
  }
  auto ax = [&](const Clause& c) {
    auto it = axiom_index.find(c);
    if (it == axiom_index.end())
      throw std::logic_error("expected axiom missing: " + c.str());
    return it->second;
  };
  auto res = [&](int p1, int p2) {
    Clause r = resolve(proof.steps[p1].clause, proof.steps[p2].clause);
    return proof.add_resolvent(std::move(r), p1, p2);
  };

  const Var vn = n;
  const Var ytop = detail::tn_y(n, n - 1);
  const Var yptop = detail::tn_yp(n, n - 1);

  // Top link: from the four binary clauses derive y_{n-1} != y'_{n-1}.
  int e1 = res(ax(Clause{-ytop, vn}), ax(Clause{-yptop, -vn}));  // {-y,-y'}
  int e2 = res(ax(Clause{ytop, -vn}), ax(Clause{yptop, vn}));    // {y,y'}

  // Walk the chains downwards: from y_i != y'_i derive y_{i-1} != y'_{i-1}.
  for (int i = n - 1; i >= 3; --i) {
    const Var yi = detail::tn_y(n, i);
    const Var ypi = detail::tn_yp(n, i);
    const Var ylo = detail::tn_y(n, i - 1);
    const Var yplo = detail::tn_yp(n, i - 1);
    const Var xi = i;
    int c1 = ax(Clause{-ylo, -xi, -yi});
    int c2 = ax(Clause{-ylo, xi, yi});
    int c3 = ax(Clause{ylo, -xi, yi});
    int c4 = ax(Clause{ylo, xi, -yi});
    int d1 = ax(Clause{-yplo, -xi, -ypi});
    int d2 = ax(Clause{-yplo, xi, ypi});
    int d3 = ax(Clause{yplo, -xi, ypi});
    int d4 = ax(Clause{yplo, xi, -ypi});
    int t1 = res(c1, e2);   // {-ylo,-xi,y'i}
    int t2 = res(t1, d2);   // {-ylo,-y'lo,y'i}
    int t3 = res(c2, e1);   // {-ylo,xi,-y'i}
    int t4 = res(t3, d1);   // {-ylo,-y'lo,-y'i}
    int ne1 = res(t2, t4);  // {-ylo,-y'lo}
    int t5 = res(c3, e1);   // {ylo,-xi,-y'i}
    int t6 = res(t5, d4);   // {ylo,y'lo,-y'i}
    int t7 = res(c4, e2);   // {ylo,xi,y'i}
    int t8 = res(t7, d3);   // {ylo,y'lo,y'i}
    int ne2 = res(t6, t8);  // {ylo,y'lo}
    e1 = ne1;
    e2 = ne2;
  }

  // Endgame on the first links x1 + x2 = y_2 and x1 + x2 = y'_2.
  const Var y2 = detail::tn_y(n, 2);
  const Var yp2 = detail::tn_yp(n, 2);
  int c1 = ax(Clause{-1, -2, -y2});
  int c2 = ax(Clause{-1, 2, y2});
  int c3 = ax(Clause{1, -2, y2});
  int c4 = ax(Clause{1, 2, -y2});
  int d1 = ax(Clause{-1, -2, -yp2});
  int d2 = ax(Clause{-1, 2, yp2});
  int d3 = ax(Clause{1, -2, yp2});
  int d4 = ax(Clause{1, 2, -yp2});
  int u1 = res(c1, e2);    // {-1,-2,y'2}
  int u2 = res(u1, d1);    // {-1,-2}
  int u3 = res(c2, e1);    // {-1,2,-y'2}
  int u4 = res(u3, d2);    // {-1,2}
  int u5 = res(u2, u4);    // {-1}
  int u6 = res(c3, e1);    // {1,-2,-y'2}
  int u7 = res(u6, d3);    // {1,-2}
  int u8 = res(c4, e2);    // {1,2,y'2}
  int u9 = res(u8, d4);    // {1,2}
  int u10 = res(u7, u9);   // {1}
  res(u5, u10);            // {}
  return proof;
}

// ---------------------------------------------------------------------------
// Proof text format: one step per line, "<id> <lit>... 0" for axioms and
// "<id> <lit>... 0 <p1> <p2>" for resolvents; ids are 1-based and must be
// in order.
// ---------------------------------------------------------------------------

inline void write_proof(std::ostream& out, const ResolutionProof& proof) {
  for (size_t i = 0; i < proof.steps.size(); ++i) {
    const auto& step = proof.steps[i];
    out << (i + 1);
    for (Lit x : step.clause) out << " " << x;
    out << " 0";
    if (!step.axiom()) out << " " << (step.parent1 + 1) << " " << (step.parent2 + 1);
    out << "\n";
  }
}

inline ResolutionProof read_proof(std::istream& in) {
  ResolutionProof proof;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    long id;
    try {
      id = std::stol(first);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad step id");
    }
    if (id != static_cast<long>(proof.steps.size()) + 1)
      throw ParseError("line " + std::to_string(lineno) + ": step ids must be " +
                       "consecutive starting at 1");
    std::vector<Lit> lits;
    long tok;
    bool terminated = false;
    while (ls >> tok) {
      if (tok == 0) {
        terminated = true;
        break;
      }
      lits.push_back(static_cast<Lit>(tok));
    }
    if (!terminated)
      throw ParseError("line " + std::to_string(lineno) + ": missing 0 terminator");
    long p1, p2;
    if (ls >> p1) {
      if (!(ls >> p2))
        throw ParseError("line " + std::to_string(lineno) + ": lone parent id");
      if (p1 < 1 || p2 < 1 || p1 >= id || p2 >= id)
        throw ParseError("line " + std::to_string(lineno) +
                         ": parent ids must name earlier steps");
      Clause c;
      try {
        c = Clause(std::move(lits));
      } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
      proof.add_resolvent(std::move(c), static_cast<int>(p1 - 1),
                          static_cast<int>(p2 - 1));
    } else {
      try {
        proof.add_axiom(Clause(std::move(lits)));
      } catch (const std::invalid_argument& e) {
        throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  return proof;
}

}  // namespace xorcnf
