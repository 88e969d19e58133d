#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "xorcnf/cnf.hpp"

namespace xorcnf {

/// A parity constraint in canonical form: xor of `vars` equals `rhs`.
/// The empty constraint with rhs 1 is the inconsistent constraint 0 = 1,
/// the empty constraint with rhs 0 is trivially true.
class XorConstraint {
 public:
  XorConstraint() : rhs_(0) {}

  XorConstraint(std::vector<Var> vars, int rhs) : vars_(std::move(vars)), rhs_(rhs & 1) {
    canonicalize();
  }

  /// Reads an ordinary clause as the parity constraint "xor of its
  /// literals = 0": the variable set plus the parity of complements.
  static XorConstraint from_clause(const Clause& c) {
    std::vector<Var> vs;
    int neg = 0;
    for (Lit x : c) {
      vs.push_back(var_of(x));
      if (!is_positive(x)) neg ^= 1;
    }
    return XorConstraint(std::move(vs), neg);
  }

  /// Canonical clause view. rhs 0 gives all-positive literals; rhs 1
  /// complements the smallest variable. Throws for the inconsistent
  /// constraint, which has no single-clause view.
  Clause to_clause() const {
    if (is_inconsistent())
      throw std::domain_error("inconsistent constraint has no clause view");
    std::vector<Lit> lits(vars_.begin(), vars_.end());
    if (rhs_ == 1) lits[0] = -lits[0];
    return Clause(std::move(lits));
  }

  const std::vector<Var>& vars() const { return vars_; }
  int rhs() const { return rhs_; }
  size_t size() const { return vars_.size(); }

  bool is_inconsistent() const { return vars_.empty() && rhs_ == 1; }
  bool is_trivial() const { return vars_.empty() && rhs_ == 0; }

  bool mentions(Var v) const {
    return std::binary_search(vars_.begin(), vars_.end(), v);
  }

  /// Satisfaction under a total assignment of the constraint's variables.
  bool satisfied_by(const PartialAssignment& phi) const {
    int sum = 0;
    for (Var v : vars_) {
      auto b = phi.value_of_var(v);
      if (!b) throw std::invalid_argument("assignment does not cover constraint");
      sum ^= *b ? 1 : 0;
    }
    return sum == rhs_;
  }

  /// Componentwise GF(2) sum: symmetric difference of the variable sets,
  /// xor of the right-hand sides.
  friend XorConstraint operator^(const XorConstraint& a, const XorConstraint& b) {
    std::vector<Var> out;
    std::set_symmetric_difference(a.vars_.begin(), a.vars_.end(),
                                  b.vars_.begin(), b.vars_.end(),
                                  std::back_inserter(out));
    XorConstraint r;
    r.vars_ = std::move(out);
    r.rhs_ = a.rhs_ ^ b.rhs_;
    return r;
  }

  bool operator==(const XorConstraint& o) const {
    return rhs_ == o.rhs_ && vars_ == o.vars_;
  }
  bool operator!=(const XorConstraint& o) const { return !(*this == o); }
  bool operator<(const XorConstraint& o) const {
    if (vars_ != o.vars_) return vars_ < o.vars_;
    return rhs_ < o.rhs_;
  }

  std::string str() const {
    std::ostringstream out;
    if (vars_.empty()) {
      out << "0=" << rhs_;
      return out.str();
    }
    for (size_t i = 0; i < vars_.size(); ++i) out << (i ? "^" : "") << vars_[i];
    out << "=" << rhs_;
    return out.str();
  }

 private:
  void canonicalize() {
    std::sort(vars_.begin(), vars_.end());
    // Repeated variables cancel in pairs.
    std::vector<Var> keep;
    for (size_t i = 0; i < vars_.size();) {
      size_t j = i;
      while (j < vars_.size() && vars_[j] == vars_[i]) ++j;
      if (vars_[i] <= 0) throw std::invalid_argument("variable must be positive");
      if ((j - i) % 2 == 1) keep.push_back(vars_[i]);
      i = j;
    }
    vars_ = std::move(keep);
  }

  std::vector<Var> vars_;
  int rhs_;
};

struct UnsatSystemError : std::runtime_error {
  explicit UnsatSystemError(std::vector<size_t> cert)
      : std::runtime_error("system of parity constraints is unsatisfiable"),
        certificate(std::move(cert)) {}
  /// Indices of a subset of the constraints whose sum is 0 = 1.
  std::vector<size_t> certificate;
};

/// A set of canonical parity constraints, one row of A(F)x = b(F) each.
class XorSystem {
 public:
  XorSystem() = default;

  explicit XorSystem(std::vector<XorConstraint> rows) : rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end());
    rows_.erase(std::unique(rows_.begin(), rows_.end()), rows_.end());
  }

  XorSystem(std::initializer_list<XorConstraint> rows)
      : XorSystem(std::vector<XorConstraint>(rows)) {}

  const std::vector<XorConstraint>& constraints() const { return rows_; }
  auto begin() const { return rows_.begin(); }
  auto end() const { return rows_.end(); }
  size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  std::vector<Var> variables() const {
    std::vector<Var> vs;
    for (const auto& c : rows_) vs.insert(vs.end(), c.vars().begin(), c.vars().end());
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  Var max_var() const {
    Var m = 0;
    for (const auto& c : rows_)
      if (!c.vars().empty()) m = std::max(m, c.vars().back());
    return m;
  }

  bool satisfied_by(const PartialAssignment& phi) const {
    for (const auto& c : rows_)
      if (!c.satisfied_by(phi)) return false;
    return true;
  }

  /// Clause view of the whole system; the inconsistent constraint
  /// materializes as the pair {v},{-v} over a fresh variable.
  ClauseSet to_xor_clauses(VarAllocator& alloc) const {
    std::vector<Clause> out;
    for (const auto& c : rows_) {
      if (c.is_inconsistent()) {
        Var v = alloc.fresh();
        out.push_back(Clause{v});
        out.push_back(Clause{-v});
      } else if (!c.is_trivial()) {
        out.push_back(c.to_clause());
      }
    }
    return ClauseSet(std::move(out));
  }

  bool operator==(const XorSystem& o) const { return rows_ == o.rows_; }
  bool operator!=(const XorSystem& o) const { return rows_ != o.rows_; }

 private:
  std::vector<XorConstraint> rows_;
};

/// Reinterprets a clause-set: each clause becomes the constraint
/// "xor of its variables = parity of its complements".
inline XorSystem from_xor_clauses(const ClauseSet& F) {
  std::vector<XorConstraint> rows;
  rows.reserve(F.num_clauses());
  for (const Clause& c : F) rows.push_back(XorConstraint::from_clause(c));
  return XorSystem(std::move(rows));
}

/// GF(2) sum of all constraints of the system; the empty system sums to
/// the trivial constraint.
inline XorConstraint xor_sum(const XorSystem& S) {
  XorConstraint acc;
  for (const auto& c : S) acc = acc ^ c;
  return acc;
}

namespace detail {

// Bit-packed GF(2) row over a fixed column layout, with the subset of
// original rows it combines tracked alongside for certificates.
struct Gf2Row {
  std::vector<uint64_t> bits;
  int rhs = 0;
  std::vector<uint64_t> comb;

  bool zero() const {
    for (uint64_t w : bits)
      if (w) return false;
    return true;
  }
  int lowest_bit() const {
    for (size_t w = 0; w < bits.size(); ++w)
      if (bits[w]) return static_cast<int>(w * 64 + __builtin_ctzll(bits[w]));
    return -1;
  }
  void operator^=(const Gf2Row& o) {
    for (size_t i = 0; i < bits.size(); ++i) bits[i] ^= o.bits[i];
    rhs ^= o.rhs;
    for (size_t i = 0; i < comb.size(); ++i) comb[i] ^= o.comb[i];
  }
};

struct Gf2Elim {
  std::vector<Var> cols;                 // column -> variable, ascending
  std::vector<Gf2Row> echelon;           // pivot rows, ascending pivot column
  std::vector<int> pivot_cols;
  bool consistent = true;
  std::vector<size_t> certificate;       // set on inconsistency

  std::map<Var, int> col_of;

  static Gf2Elim run(const XorSystem& S) {
    Gf2Elim e;
    e.cols = S.variables();
    for (size_t i = 0; i < e.cols.size(); ++i) e.col_of[e.cols[i]] = static_cast<int>(i);
    const size_t nwords = (e.cols.size() + 63) / 64;
    const size_t m = S.size();
    const size_t mwords = (m + 63) / 64;
    for (size_t r = 0; r < m; ++r) {
      Gf2Row row;
      row.bits.assign(nwords, 0);
      row.comb.assign(mwords, 0);
      row.comb[r / 64] |= uint64_t{1} << (r % 64);
      const XorConstraint& c = S.constraints()[r];
      for (Var v : c.vars()) {
        int j = e.col_of[v];
        row.bits[j / 64] |= uint64_t{1} << (j % 64);
      }
      row.rhs = c.rhs();
      e.reduce_and_insert(std::move(row));
      if (!e.consistent) return e;
    }
    return e;
  }

  // Reduces the row against the echelon; inserts it as a new pivot row or,
  // if it vanished with rhs 1, records the inconsistency certificate.
  void reduce_and_insert(Gf2Row row) {
    reduce(row);
    if (row.zero()) {
      if (row.rhs == 1) {
        consistent = false;
        for (size_t i = 0; i < row.comb.size(); ++i)
          for (int b = 0; b < 64; ++b)
            if (row.comb[i] & (uint64_t{1} << b)) certificate.push_back(i * 64 + b);
      }
      return;
    }
    int pc = row.lowest_bit();
    auto it = std::lower_bound(pivot_cols.begin(), pivot_cols.end(), pc);
    size_t at = static_cast<size_t>(it - pivot_cols.begin());
    pivot_cols.insert(it, pc);
    echelon.insert(echelon.begin() + at, std::move(row));
  }

  void reduce(Gf2Row& row) const {
    for (size_t i = 0; i < echelon.size(); ++i) {
      int pc = pivot_cols[i];
      if (row.bits[pc / 64] & (uint64_t{1} << (pc % 64))) row ^= echelon[i];
    }
  }

  XorConstraint row_to_constraint(const Gf2Row& row) const {
    std::vector<Var> vs;
    for (size_t j = 0; j < cols.size(); ++j)
      if (row.bits[j / 64] & (uint64_t{1} << (j % 64))) vs.push_back(cols[j]);
    return XorConstraint(std::move(vs), row.rhs);
  }
};

}  // namespace detail

struct XorSatResult {
  bool sat = false;
  /// Total satisfying assignment over var(S) when sat.
  PartialAssignment model;
  /// Indices of a constraint subset whose sum is 0 = 1 when unsat.
  std::vector<size_t> certificate;
};

/// Gaussian elimination over GF(2). Free variables get value 0, so the
/// witness is deterministic.
inline XorSatResult xor_sat(const XorSystem& S) {
  XorSatResult res;
  auto elim = detail::Gf2Elim::run(S);
  if (!elim.consistent) {
    res.sat = false;
    res.certificate = elim.certificate;
    return res;
  }
  res.sat = true;
  for (Var v : elim.cols) res.model.bind(v, false);
  // Back-substitution from the highest pivot down.
  for (size_t i = elim.echelon.size(); i-- > 0;) {
    const auto& row = elim.echelon[i];
    int pc = elim.pivot_cols[i];
    int sum = row.rhs;
    for (size_t j = 0; j < elim.cols.size(); ++j) {
      if (static_cast<int>(j) == pc) continue;
      if (row.bits[j / 64] & (uint64_t{1} << (j % 64)))
        sum ^= *res.model.value_of_var(elim.cols[j]) ? 1 : 0;
    }
    res.model.bind(elim.cols[pc], sum == 1);
  }
  return res;
}

/// Whether the satisfiable system S implies the constraint c, by membership
/// of (c;d) in the row space of the augmented matrix.
inline bool xor_implies(const XorSystem& S, const XorConstraint& c) {
  auto elim = detail::Gf2Elim::run(S);
  if (!elim.consistent) throw UnsatSystemError(elim.certificate);
  for (Var v : c.vars())
    if (!elim.col_of.count(v)) return false;  // fresh variable cannot be implied
  detail::Gf2Row row;
  row.bits.assign((elim.cols.size() + 63) / 64, 0);
  row.comb.assign(1, 0);
  for (Var v : c.vars()) {
    int j = elim.col_of[v];
    row.bits[j / 64] |= uint64_t{1} << (j % 64);
  }
  row.rhs = c.rhs();
  // comb widths differ; reduce manually on bits/rhs only.
  for (size_t i = 0; i < elim.echelon.size(); ++i) {
    int pc = elim.pivot_cols[i];
    if (row.bits[pc / 64] & (uint64_t{1} << (pc % 64))) {
      for (size_t w = 0; w < row.bits.size(); ++w) row.bits[w] ^= elim.echelon[i].bits[w];
      row.rhs ^= elim.echelon[i].rhs;
    }
  }
  return row.zero() && row.rhs == 0;
}

/// All subset sums of S, canonicalized and deduplicated, with the trivial
/// constraint removed. Throws UnsatSystemError (with certificate) on
/// unsatisfiable input and CapExceeded beyond the hard subset cap.
inline XorSystem closure_star(const XorSystem& S, int max_constraints = 24) {
  const size_t m = S.size();
  if (m > static_cast<size_t>(std::min(max_constraints, 62)))
    throw CapExceeded("closure_star: system has " + std::to_string(m) +
                      " constraints, cap is " + std::to_string(max_constraints));
  std::set<XorConstraint> out;
  // Gray-code walk: consecutive subsets differ in one element, so each sum
  // is one xor away from the previous.
  XorConstraint acc;
  uint64_t prev_gray = 0;
  const uint64_t total = uint64_t{1} << m;
  for (uint64_t i = 1; i < total; ++i) {
    uint64_t gray = i ^ (i >> 1);
    uint64_t changed = gray ^ prev_gray;
    prev_gray = gray;
    int idx = __builtin_ctzll(changed);
    acc = acc ^ S.constraints()[static_cast<size_t>(idx)];
    if (acc.is_inconsistent()) {
      std::vector<size_t> cert;
      for (size_t j = 0; j < m; ++j)
        if (gray & (uint64_t{1} << j)) cert.push_back(j);
      throw UnsatSystemError(std::move(cert));
    }
    if (!acc.is_trivial()) out.insert(acc);
  }
  return XorSystem(std::vector<XorConstraint>(out.begin(), out.end()));
}

/// Row-echelon basis of the system: an equivalent system with at most
/// min(n, c) constraints. Throws on unsatisfiable input.
inline XorSystem normalize_basis(const XorSystem& S) {
  auto elim = detail::Gf2Elim::run(S);
  if (!elim.consistent) throw UnsatSystemError(elim.certificate);
  std::vector<XorConstraint> rows;
  for (const auto& row : elim.echelon) rows.push_back(elim.row_to_constraint(row));
  return XorSystem(std::move(rows));
}

/// Adds one fresh positive literal to every clause. Fresh variables are
/// pairwise distinct and lie above var(F), assigned in clause order.
inline ClauseSet dope(const ClauseSet& F) {
  VarAllocator alloc = VarAllocator::above(F);
  std::vector<Clause> out;
  for (const Clause& c : F) {
    std::vector<Lit> lits = c.literals();
    lits.push_back(alloc.fresh());
    out.push_back(Clause(std::move(lits)));
  }
  return ClauseSet(std::move(out));
}

/// Doping on the canonical view: every constraint gains one fresh variable,
/// right-hand sides unchanged.
inline XorSystem dope(const XorSystem& S) {
  VarAllocator alloc(S.max_var() + 1);
  std::vector<XorConstraint> out;
  for (const auto& c : S) {
    std::vector<Var> vs = c.vars();
    vs.push_back(alloc.fresh());
    out.emplace_back(std::move(vs), c.rhs());
  }
  return XorSystem(std::move(out));
}

// ---------------------------------------------------------------------------
// XNF text format: optional header "p xnf <n> <m>", one constraint per line
// "x l1 l2 ... lk 0", read as the XOR-clause {l1..lk} (xor of the literals
// equals 0). The alternative convention instead reads "x ..." as xor of the
// positive variables = 1, adjusted by signs.
// ---------------------------------------------------------------------------

struct XnfFile {
  XorSystem system;
  std::vector<std::string> comments;
};

inline XnfFile read_xnf(std::istream& in, bool alt_convention = false) {
  XnfFile file;
  std::vector<XorConstraint> rows;
  std::string line;
  size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "c") {
      file.comments.push_back(line);
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      long n = 0, m = 0;
      if (saw_header || !(ls >> fmt >> n >> m) || fmt != "xnf")
        throw ParseError("line " + std::to_string(lineno) + ": bad xnf header");
      saw_header = true;
      continue;
    }
    if (tok != "x")
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected 'x' constraint line, got '" + tok + "'");
    std::vector<Var> vars;
    int neg = 0;
    long lit;
    bool terminated = false;
    while (ls >> lit) {
      if (lit == 0) {
        terminated = true;
        break;
      }
      vars.push_back(static_cast<Var>(lit < 0 ? -lit : lit));
      if (lit < 0) neg ^= 1;
    }
    if (!terminated)
      throw ParseError("line " + std::to_string(lineno) + ": missing terminating 0");
    int rhs = alt_convention ? (neg ^ 1) : neg;
    rows.emplace_back(std::move(vars), rhs);
  }
  file.system = XorSystem(std::move(rows));
  return file;
}

inline void write_xnf(std::ostream& out, const XorSystem& S) {
  VarAllocator alloc(S.max_var() + 1);
  std::vector<std::string> lines;
  size_t m = 0;
  Var maxv = 0;
  for (const auto& c : S) {
    std::ostringstream ls;
    ls << "x";
    if (c.is_inconsistent()) {
      Var v = alloc.fresh();
      maxv = std::max(maxv, v);
      lines.push_back("x " + std::to_string(v) + " 0");
      lines.push_back("x -" + std::to_string(v) + " 0");
      m += 2;
      continue;
    }
    if (c.is_trivial()) {
      lines.push_back("x 0");
      ++m;
      continue;
    }
    Clause cl = c.to_clause();
    for (Lit x : cl) {
      ls << " " << x;
      maxv = std::max(maxv, var_of(x));
    }
    ls << " 0";
    lines.push_back(ls.str());
    ++m;
  }
  out << "p xnf " << maxv << " " << m << "\n";
  for (const auto& l : lines) out << l << "\n";
}

}  // namespace xorcnf
