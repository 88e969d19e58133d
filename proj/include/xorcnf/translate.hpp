#pragma once

#include <map>
#include <string>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/prime.hpp"
#include "xorcnf/xor_system.hpp"

namespace xorcnf {

enum class Method { X0, X1, X2, XSTAR, PRIME };

inline const char* method_name(Method m) {
  switch (m) {
    case Method::X0: return "x0";
    case Method::X1: return "x1";
    case Method::X2: return "x2";
    case Method::XSTAR: return "xstar";
    case Method::PRIME: return "prime";
  }
  return "?";
}

struct TranslationResult {
  ClauseSet cnf;
  /// Auxiliary variable -> the xor expression over input variables it
  /// stands for. Covers exactly var(cnf) \ var(input).
  std::map<Var, XorConstraint> aux;
  Method method = Method::X0;
  std::vector<Var> original_vars;
};

struct X2PreconditionError : std::runtime_error {
  enum Which { SHARED_TOO_SMALL, NO_PRIVATE_FIRST, NO_PRIVATE_SECOND };
  X2PreconditionError(Which w, const std::string& msg)
      : std::runtime_error(msg), which(w) {}
  Which which;
};

/// The unique equivalent clause-set of one parity constraint: all full
/// clauses over its variables whose complement parity differs from the
/// constraint's parity; 2^(n-1) clauses for n >= 1, top for the trivial
/// constraint. The inconsistent constraint has no clause-set over its own
/// (empty) variable set and is rejected here; system-level translation
/// materializes it over a fresh variable instead.
inline ClauseSet x0_clause(const XorConstraint& c) {
  if (c.is_inconsistent())
    throw std::domain_error(
        "x0: the inconsistent constraint needs a fresh variable; translate it "
        "at system level");
  if (c.is_trivial()) return ClauseSet::top();
  const auto& vars = c.vars();
  const size_t n = vars.size();
  if (n > 24) throw CapExceeded("x0: constraint with more than 24 variables");
  std::vector<Clause> out;
  out.reserve(size_t{1} << (n - 1));
  for (uint64_t sigma = 0; sigma < (uint64_t{1} << n); ++sigma) {
    int parity = __builtin_popcountll(sigma) & 1;
    if (parity == c.rhs()) continue;  // sigma satisfies the constraint
    std::vector<Lit> lits(n);
    for (size_t j = 0; j < n; ++j)
      lits[j] = (sigma >> j) & 1 ? -vars[j] : vars[j];
    out.push_back(Clause(std::move(lits)));
  }
  return ClauseSet(std::move(out));
}

/// X0 of a whole system: the union of the per-constraint clause-sets, no
/// auxiliary variables except a fresh one materializing 0 = 1 if present.
inline TranslationResult x0(const XorSystem& S) {
  TranslationResult res;
  res.method = Method::X0;
  res.original_vars = S.variables();
  VarAllocator alloc(S.max_var() + 1);
  ClauseSet acc;
  for (const auto& c : S) {
    if (c.is_inconsistent()) {
      Var v = alloc.fresh();
      acc = acc.union_with(ClauseSet({Clause{v}, Clause{-v}}));
      res.aux.emplace(v, XorConstraint({}, 1));
    } else {
      acc = acc.union_with(x0_clause(c));
    }
  }
  res.cnf = acc;
  return res;
}

namespace detail {

// Chain splitting of one constraint with the caller's allocator. For
// n >= 3 introduces prefix-sum variables y_2 .. y_{n-1}; every link is
// expanded by x0_clause, and the constraint's parity sits on the last link.
inline void x1_clause_into(const XorConstraint& c, VarAllocator& alloc,
                           TranslationResult& res) {
  if (c.is_inconsistent()) {
    Var v = alloc.fresh();
    res.cnf = res.cnf.union_with(ClauseSet({Clause{v}, Clause{-v}}));
    res.aux.emplace(v, XorConstraint({}, 1));
    return;
  }
  const auto& vars = c.vars();
  const size_t n = vars.size();
  if (n <= 2) {
    res.cnf = res.cnf.union_with(x0_clause(c));
    return;
  }
  std::vector<Var> y(n);  // y[j] defined for 2 <= j <= n-1
  std::vector<Var> prefix;
  for (size_t j = 2; j <= n - 1; ++j) {
    y[j] = alloc.fresh();
    prefix.assign(vars.begin(), vars.begin() + j);
    res.aux.emplace(y[j], XorConstraint(prefix, 0));
  }
  std::vector<XorConstraint> links;
  links.emplace_back(std::vector<Var>{vars[0], vars[1], y[2]}, 0);
  for (size_t j = 3; j <= n - 1; ++j)
    links.emplace_back(std::vector<Var>{y[j - 1], vars[j - 1], y[j]}, 0);
  links.emplace_back(std::vector<Var>{y[n - 1], vars[n - 1]}, c.rhs());
  for (const auto& link : links) res.cnf = res.cnf.union_with(x0_clause(link));
}

}  // namespace detail

/// Natural splitting of a single constraint. Equals x0_clause for n <= 2;
/// otherwise the chain over fresh prefix variables gives n(F) = 2n-2,
/// c(F) = 4n-6, l(F) = 12n-20, all clauses of length at most 3.
inline TranslationResult x1_clause(const XorConstraint& c, VarAllocator& alloc) {
  TranslationResult res;
  res.method = Method::X1;
  res.original_vars = c.vars();
  detail::x1_clause_into(c, alloc, res);
  return res;
}

inline TranslationResult x1_clause(const XorConstraint& c) {
  VarAllocator alloc(c.vars().empty() ? 1 : c.vars().back() + 1);
  return x1_clause(c, alloc);
}

/// X1 of a system: chain splitting per constraint with pairwise-disjoint
/// fresh variables; every output clause has length at most 3.
inline TranslationResult x1(const XorSystem& S, VarAllocator& alloc) {
  TranslationResult res;
  res.method = Method::X1;
  res.original_vars = S.variables();
  for (const auto& c : S) detail::x1_clause_into(c, alloc, res);
  return res;
}

inline TranslationResult x1(const XorSystem& S) {
  VarAllocator alloc(S.max_var() + 1);
  return x1(S, alloc);
}

/// Translation of a pair of constraints that factors out the shared part:
/// with I the shared variables and s fresh, translate {I+s = 0,
/// (C\I)+s = rhs(C), (D\I)+s = rhs(D)} by x1. Requires at least two shared
/// variables and a private variable on each side.
inline TranslationResult x2(const XorConstraint& c, const XorConstraint& d) {
  std::vector<Var> shared;
  std::set_intersection(c.vars().begin(), c.vars().end(), d.vars().begin(),
                        d.vars().end(), std::back_inserter(shared));
  if (shared.size() < 2)
    throw X2PreconditionError(X2PreconditionError::SHARED_TOO_SMALL,
                              "x2: constraints share fewer than 2 variables");
  if (c.size() <= shared.size())
    throw X2PreconditionError(X2PreconditionError::NO_PRIVATE_FIRST,
                              "x2: first constraint has no private variable");
  if (d.size() <= shared.size())
    throw X2PreconditionError(X2PreconditionError::NO_PRIVATE_SECOND,
                              "x2: second constraint has no private variable");
  Var maxv = std::max(c.vars().back(), d.vars().back());
  VarAllocator alloc(maxv + 1);
  Var s = alloc.fresh();

  std::vector<Var> with_s = shared;
  with_s.push_back(s);
  XorConstraint shared_part(with_s, 0);  // s carries the whole shared sum

  auto private_part = [&](const XorConstraint& e) {
    std::vector<Var> priv;
    std::set_difference(e.vars().begin(), e.vars().end(), shared.begin(),
                        shared.end(), std::back_inserter(priv));
    priv.push_back(s);
    return XorConstraint(priv, e.rhs());
  };

  XorSystem split({shared_part, private_part(c), private_part(d)});
  TranslationResult res = x1(split, alloc);
  res.method = Method::X2;
  std::vector<Var> orig;
  std::set_union(c.vars().begin(), c.vars().end(), d.vars().begin(),
                 d.vars().end(), std::back_inserter(orig));
  res.original_vars = orig;
  res.aux.emplace(s, XorConstraint(shared, 0));
  return res;
}

/// X1 of the subset-sum closure. Relative propagation hardness over var(S)
/// is at most 1; runtime is O(l * 2^m) in the number m of constraints.
inline TranslationResult xstar(const XorSystem& S, int closure_cap = 24) {
  XorSystem closed = closure_star(S, closure_cap);  // throws on unsat input
  VarAllocator alloc(S.max_var() + 1);
  TranslationResult res = x1(closed, alloc);
  res.method = Method::XSTAR;
  res.original_vars = S.variables();
  return res;
}

/// The unique representation without auxiliary variables: prime implicates
/// of the boolean function of S, obtained as the prime implicates of x1(S)
/// restricted to clauses over var(S). Requires every constraint to have at
/// most `max_len` variables and the chain translation to stay within the
/// subset-method cap.
inline TranslationResult prime_translation(const XorSystem& S, int max_len,
                                           int max_x1_clauses = 20) {
  for (const auto& c : S)
    if (c.size() > static_cast<size_t>(max_len))
      throw std::invalid_argument("prime_translation: constraint longer than " +
                                  std::to_string(max_len));
  TranslationResult chain = x1(S);
  if (chain.cnf.num_clauses() > static_cast<size_t>(max_x1_clauses))
    throw CapExceeded("prime_translation: intermediate translation has " +
                      std::to_string(chain.cnf.num_clauses()) +
                      " clauses, cap is " + std::to_string(max_x1_clauses));
  ClauseSet primes = prime_implicates(chain.cnf, max_x1_clauses);
  std::vector<Var> orig = S.variables();
  std::vector<Clause> keep;
  for (const Clause& c : primes) {
    bool over_orig = true;
    for (Lit x : c)
      if (!std::binary_search(orig.begin(), orig.end(), var_of(x))) {
        over_orig = false;
        break;
      }
    if (over_orig) keep.push_back(c);
  }
  TranslationResult res;
  res.method = Method::PRIME;
  res.original_vars = orig;
  res.cnf = ClauseSet(std::move(keep));
  return res;
}

/// Whether the factored pair translation applies.
inline bool x2_applicable(const XorConstraint& c, const XorConstraint& d) {
  std::vector<Var> shared;
  std::set_intersection(c.vars().begin(), c.vars().end(), d.vars().begin(),
                        d.vars().end(), std::back_inserter(shared));
  return shared.size() >= 2 && c.size() > shared.size() && d.size() > shared.size();
}

}  // namespace xorcnf
