#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace xorcnf {

// Variables are positive integers, literals are signed DIMACS-style
// integers: +v is the positive literal, -v the complemented one.
using Var = int;
using Lit = int;

inline Var var_of(Lit x) { return x < 0 ? -x : x; }
inline bool is_positive(Lit x) { return x > 0; }
inline Lit complement(Lit x) { return -x; }

// Ascending variable index, positive polarity first.
inline bool lit_less(Lit a, Lit b) {
  if (var_of(a) != var_of(b)) return var_of(a) < var_of(b);
  return a > b;
}

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A clause: a complement-free set of literals, kept sorted by variable.
/// Attempting to build a tautological clause (x and -x together) throws.
class Clause {
 public:
  Clause() = default;

  explicit Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
    canonicalize();
  }

  Clause(std::initializer_list<Lit> lits) : lits_(lits) { canonicalize(); }

  static Clause from_sorted_unchecked(std::vector<Lit> lits) {
    Clause c;
    c.lits_ = std::move(lits);
    return c;
  }

  size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }

  bool contains(Lit x) const {
    return std::binary_search(lits_.begin(), lits_.end(), x, lit_less);
  }
  bool has_var(Var v) const { return contains(v) || contains(-v); }

  const std::vector<Lit>& literals() const { return lits_; }
  auto begin() const { return lits_.begin(); }
  auto end() const { return lits_.end(); }

  /// true iff every literal of this clause appears in `other`.
  bool subsumes(const Clause& other) const {
    return std::includes(other.lits_.begin(), other.lits_.end(),
                         lits_.begin(), lits_.end(), lit_less);
  }

  bool operator==(const Clause& o) const { return lits_ == o.lits_; }
  bool operator!=(const Clause& o) const { return lits_ != o.lits_; }
  bool operator<(const Clause& o) const {
    return std::lexicographical_compare(lits_.begin(), lits_.end(),
                                        o.lits_.begin(), o.lits_.end(),
                                        lit_less);
  }

  std::string str() const {
    std::ostringstream out;
    out << "{";
    for (size_t i = 0; i < lits_.size(); ++i)
      out << (i ? "," : "") << lits_[i];
    out << "}";
    return out.str();
  }

 private:
  void canonicalize() {
    for (Lit x : lits_) {
      if (x == 0) throw std::invalid_argument("literal 0 is not allowed");
    }
    std::sort(lits_.begin(), lits_.end(), lit_less);
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (size_t i = 0; i + 1 < lits_.size(); ++i) {
      if (var_of(lits_[i]) == var_of(lits_[i + 1]))
        throw std::invalid_argument("tautological clause: variable " +
                                    std::to_string(var_of(lits_[i])) +
                                    " occurs with both polarities");
    }
  }

  std::vector<Lit> lits_;
};

/// A finite set of clauses. Duplicates collapse; the clause order is
/// canonical so equal sets compare equal.
class ClauseSet {
 public:
  ClauseSet() = default;

  explicit ClauseSet(std::vector<Clause> clauses) : clauses_(std::move(clauses)) {
    std::sort(clauses_.begin(), clauses_.end());
    clauses_.erase(std::unique(clauses_.begin(), clauses_.end()),
                   clauses_.end());
  }

  ClauseSet(std::initializer_list<Clause> clauses)
      : ClauseSet(std::vector<Clause>(clauses)) {}

  static ClauseSet top() { return ClauseSet(); }
  static ClauseSet contradiction() { return ClauseSet({Clause{}}); }

  bool is_top() const { return clauses_.empty(); }
  bool has_empty_clause() const {
    return !clauses_.empty() && clauses_.front().empty();
  }
  /// true iff this is exactly {bot}.
  bool is_contradiction() const {
    return clauses_.size() == 1 && clauses_.front().empty();
  }

  size_t num_clauses() const { return clauses_.size(); }

  size_t num_literal_occurrences() const {
    size_t n = 0;
    for (const Clause& c : clauses_) n += c.size();
    return n;
  }

  std::vector<Var> variables() const {
    std::vector<Var> vs;
    for (const Clause& c : clauses_)
      for (Lit x : c) vs.push_back(var_of(x));
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  size_t num_vars() const { return variables().size(); }

  Var max_var() const {
    Var m = 0;
    for (const Clause& c : clauses_)
      for (Lit x : c) m = std::max(m, var_of(x));
    return m;
  }

  bool contains(const Clause& c) const {
    return std::binary_search(clauses_.begin(), clauses_.end(), c);
  }

  const std::vector<Clause>& clauses() const { return clauses_; }
  auto begin() const { return clauses_.begin(); }
  auto end() const { return clauses_.end(); }

  ClauseSet union_with(const ClauseSet& other) const {
    std::vector<Clause> all = clauses_;
    all.insert(all.end(), other.clauses_.begin(), other.clauses_.end());
    return ClauseSet(std::move(all));
  }

  bool operator==(const ClauseSet& o) const { return clauses_ == o.clauses_; }
  bool operator!=(const ClauseSet& o) const { return clauses_ != o.clauses_; }

  std::string str() const {
    std::ostringstream out;
    out << "{";
    for (size_t i = 0; i < clauses_.size(); ++i)
      out << (i ? "," : "") << clauses_[i].str();
    out << "}";
    return out.str();
  }

 private:
  std::vector<Clause> clauses_;
};

/// A finite map from variables to {0,1}.
class PartialAssignment {
 public:
  PartialAssignment() = default;

  /// Builds the assignment that makes every given literal true.
  static PartialAssignment making_true(std::initializer_list<Lit> lits) {
    PartialAssignment phi;
    for (Lit x : lits) phi.set(x);
    return phi;
  }

  void bind(Var v, bool value) {
    if (v <= 0) throw std::invalid_argument("variable must be positive");
    map_[v] = value;
  }

  /// Makes the literal true.
  void set(Lit x) { bind(var_of(x), is_positive(x)); }

  bool binds(Var v) const { return map_.count(v) != 0; }

  std::optional<bool> value_of_var(Var v) const {
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }

  /// Value of a literal under the assignment, if its variable is bound.
  std::optional<bool> value(Lit x) const {
    auto v = value_of_var(var_of(x));
    if (!v) return std::nullopt;
    return is_positive(x) ? *v : !*v;
  }

  size_t size() const { return map_.size(); }
  bool empty() const { return map_.empty(); }

  std::vector<Var> variables() const {
    std::vector<Var> vs;
    vs.reserve(map_.size());
    for (auto& [v, b] : map_) vs.push_back(v);
    return vs;
  }

  const std::map<Var, bool>& bindings() const { return map_; }

  /// Composition: this assignment acts first, `then` binds whatever is left.
  PartialAssignment compose(const PartialAssignment& then) const {
    PartialAssignment out = *this;
    for (auto& [v, b] : then.map_) out.map_.emplace(v, b);
    return out;
  }

  bool operator==(const PartialAssignment& o) const { return map_ == o.map_; }

  std::string str() const {
    std::ostringstream out;
    out << "<";
    bool first = true;
    for (auto& [v, b] : map_) {
      out << (first ? "" : ",") << v << "->" << (b ? 1 : 0);
      first = false;
    }
    out << ">";
    return out.str();
  }

 private:
  std::map<Var, bool> map_;
};

/// phi * F: drop satisfied clauses, delete falsified literals from the rest.
inline ClauseSet apply(const PartialAssignment& phi, const ClauseSet& F) {
  if (phi.empty()) return F;
  std::vector<Clause> out;
  out.reserve(F.num_clauses());
  for (const Clause& c : F) {
    bool satisfied = false;
    std::vector<Lit> rest;
    rest.reserve(c.size());
    for (Lit x : c) {
      auto v = phi.value(x);
      if (!v) {
        rest.push_back(x);
      } else if (*v) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) out.push_back(Clause::from_sorted_unchecked(std::move(rest)));
  }
  return ClauseSet(std::move(out));
}

inline ClauseSet apply(Lit x, bool value, const ClauseSet& F) {
  PartialAssignment phi;
  phi.bind(var_of(x), is_positive(x) ? value : !value);
  return apply(phi, F);
}

/// Removes clauses subsumed by another clause of the set.
inline ClauseSet subsumption_eliminate(const ClauseSet& F) {
  std::vector<Clause> keep;
  for (const Clause& c : F) {
    bool subsumed = false;
    for (const Clause& d : F) {
      if (d.size() < c.size() && d.subsumes(c)) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) keep.push_back(c);
  }
  return ClauseSet(std::move(keep));
}

/// Monotone counter handing out fresh variables above everything seen.
class VarAllocator {
 public:
  VarAllocator() : next_(1) {}
  explicit VarAllocator(Var first_free) : next_(std::max(1, first_free)) {}

  static VarAllocator above(const ClauseSet& F) {
    return VarAllocator(F.max_var() + 1);
  }

  Var fresh() { return next_++; }
  Var peek() const { return next_; }
  void reserve_through(Var v) { next_ = std::max(next_, v + 1); }

 private:
  Var next_;
};

}  // namespace xorcnf
