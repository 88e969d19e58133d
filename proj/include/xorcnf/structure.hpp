#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/translate.hpp"
#include "xorcnf/xor_system.hpp"

namespace xorcnf {

namespace detail {

class UnionFind {
 public:
  int make() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return static_cast<int>(parent_.size()) - 1;
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // false iff x and y were already connected (the new edge closes a cycle).
  bool unite(int x, int y) {
    int rx = find(x), ry = find(y);
    if (rx == ry) return false;
    parent_[rx] = ry;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

/// Whether the bipartite incidence graph between the family members and
/// their variables is a forest. Two members sharing two variables already
/// close a 4-cycle.
inline bool is_acyclic_family(const std::vector<std::vector<Var>>& varsets) {
  detail::UnionFind uf;
  std::vector<int> member_node(varsets.size());
  std::map<Var, int> var_node;
  for (size_t i = 0; i < varsets.size(); ++i) member_node[i] = uf.make();
  for (size_t i = 0; i < varsets.size(); ++i) {
    for (Var v : varsets[i]) {
      auto it = var_node.find(v);
      if (it == var_node.end()) it = var_node.emplace(v, uf.make()).first;
      if (!uf.unite(member_node[i], it->second)) return false;
    }
  }
  return true;
}

/// A system is acyclic as the family of its constraints.
inline bool is_acyclic(const XorSystem& S) {
  std::vector<std::vector<Var>> sets;
  sets.reserve(S.size());
  for (const auto& c : S) sets.push_back(c.vars());
  return is_acyclic_family(sets);
}

/// A clause-set is acyclic as the family of its singleton clauses.
inline bool is_acyclic(const ClauseSet& F) {
  std::vector<std::vector<Var>> sets;
  sets.reserve(F.num_clauses());
  for (const Clause& c : F) {
    std::vector<Var> vs;
    for (Lit x : c) vs.push_back(var_of(x));
    sets.push_back(std::move(vs));
  }
  return is_acyclic_family(sets);
}

inline bool is_acyclic(const std::vector<ClauseSet>& family) {
  std::vector<std::vector<Var>> sets;
  sets.reserve(family.size());
  for (const auto& F : family) sets.push_back(F.variables());
  return is_acyclic_family(sets);
}

/// Graph on the family indices with an edge wherever two members share a
/// variable, together with the three acyclicity criteria it supports:
/// a shared pair of variables forces a cycle; pairwise intersections of
/// size at most one plus an acyclic interaction graph force a forest; and
/// so does a single variable covering all pairwise intersections.
struct InteractionReport {
  std::vector<std::pair<size_t, size_t>> edges;
  bool some_pair_shares_two = false;
  bool interaction_graph_acyclic = true;
  bool single_common_var = true;
  std::optional<Var> common_var;
  bool incidence_acyclic = false;  // ground truth on the incidence graph

  bool criterion_a_cyclic() const { return some_pair_shares_two; }
  bool criterion_b_acyclic() const {
    return !some_pair_shares_two && interaction_graph_acyclic;
  }
  bool criterion_c_acyclic() const { return single_common_var; }
};

inline InteractionReport variable_interaction_graph(
    const std::vector<std::vector<Var>>& varsets) {
  InteractionReport rep;
  detail::UnionFind uf;
  for (size_t i = 0; i < varsets.size(); ++i) uf.make();
  for (size_t i = 0; i < varsets.size(); ++i) {
    for (size_t j = i + 1; j < varsets.size(); ++j) {
      std::vector<Var> inter;
      std::set_intersection(varsets[i].begin(), varsets[i].end(),
                            varsets[j].begin(), varsets[j].end(),
                            std::back_inserter(inter));
      if (inter.empty()) continue;
      rep.edges.emplace_back(i, j);
      if (inter.size() >= 2) rep.some_pair_shares_two = true;
      if (inter.size() >= 2 || (rep.common_var && inter[0] != *rep.common_var))
        rep.single_common_var = false;
      if (!rep.common_var && inter.size() == 1) rep.common_var = inter[0];
      if (!uf.unite(static_cast<int>(i), static_cast<int>(j)))
        rep.interaction_graph_acyclic = false;
    }
  }
  rep.incidence_acyclic = is_acyclic_family(varsets);
  return rep;
}

inline InteractionReport variable_interaction_graph(const XorSystem& S) {
  std::vector<std::vector<Var>> sets;
  for (const auto& c : S) sets.push_back(c.vars());
  return variable_interaction_graph(sets);
}

// ---------------------------------------------------------------------------
// General graphs with literal-labelled edges and charged vertices.
// ---------------------------------------------------------------------------

/// Vertices carry a charge bit; edges are labelled by literals over
/// pairwise distinct variables and connect one vertex (a loop) or two.
struct GeneralGraph {
  struct Edge {
    Lit label = 0;
    int u = 0;
    int v = 0;  // v == u encodes a loop
    bool loop() const { return u == v; }
  };
  std::map<int, int> charge;  // vertex id -> 0/1
  std::vector<Edge> edges;

  void add_vertex(int id, int rho) { charge[id] = rho & 1; }
  void add_edge(Lit label, int u, int v) { edges.push_back({label, u, v}); }
  void add_loop(Lit label, int u) { edges.push_back({label, u, u}); }

  /// Checks the invariants: labels form a clause, endpoints exist, and no
  /// isolated vertex has charge 1 (that would need the constraint 0 = 1).
  void validate() const {
    std::set<Var> seen;
    std::set<int> touched;
    for (const Edge& e : edges) {
      if (e.label == 0) throw std::invalid_argument("edge label 0");
      if (!charge.count(e.u) || !charge.count(e.v))
        throw std::invalid_argument("edge endpoint is not a declared vertex");
      if (!seen.insert(var_of(e.label)).second)
        throw std::invalid_argument("edge labels must use distinct variables");
      touched.insert(e.u);
      touched.insert(e.v);
    }
    for (const auto& [w, rho] : charge)
      if (rho == 1 && !touched.count(w))
        throw std::invalid_argument("isolated vertex with charge 1");
  }
};

/// One parity constraint per vertex: the xor over the literals of its
/// incident edges equals the charge; loops contribute their literal once.
/// Loop-free graphs with odd total charge yield unsatisfiable systems,
/// every edge occurring in exactly two vertex constraints.
inline XorSystem tseitin(const GeneralGraph& G) {
  G.validate();
  std::map<int, std::vector<Lit>> incident;
  for (const auto& [w, rho] : G.charge) incident[w];
  for (const auto& e : G.edges) {
    incident[e.u].push_back(e.label);
    if (!e.loop()) incident[e.v].push_back(e.label);
  }
  std::vector<XorConstraint> rows;
  for (const auto& [w, lits] : incident) {
    std::vector<Var> vs;
    int rhs = G.charge.at(w);
    for (Lit x : lits) {
      vs.push_back(var_of(x));
      if (!is_positive(x)) rhs ^= 1;
    }
    rows.emplace_back(std::move(vs), rhs);
  }
  return XorSystem(std::move(rows));
}

/// The two-vertex graph with edges v1..vn between them, charges 0 and 1.
inline GeneralGraph dipole_graph(int n) {
  if (n < 1) throw std::invalid_argument("dipole needs n >= 1");
  GeneralGraph g;
  g.add_vertex(1, 0);
  g.add_vertex(2, 1);
  for (Var v = 1; v <= n; ++v) g.add_edge(v, 1, 2);
  return g;
}

inline XorSystem dipole_system(int n) { return tseitin(dipole_graph(n)); }

/// One vertex of charge 0 whose loops are the literals of the clause; its
/// Tseitin system is exactly the singleton of that XOR-clause.
inline GeneralGraph bouquet_graph(const Clause& c) {
  GeneralGraph g;
  g.add_vertex(1, 0);
  for (Lit x : c) g.add_loop(x, 1);
  return g;
}

/// The unsatisfiable pair v1+...+vn = 0, v1+...+vn = 1 translated by chain
/// splitting. Auxiliary layout for n >= 3: the rhs-0 chain uses variables
/// n+1 .. 2n-2 and the rhs-1 chain 2n-1 .. 3n-4, each in prefix order.
/// Counts for n >= 2: n(F) = 3n-4, c(F) = 8n-12, l(F) = 24n-40.
inline TranslationResult tn_translation(int n) {
  if (n < 2) throw std::invalid_argument("tn needs n >= 2");
  std::vector<Var> vars;
  for (Var v = 1; v <= n; ++v) vars.push_back(v);
  XorSystem S({XorConstraint(vars, 0), XorConstraint(vars, 1)});
  return x1(S);
}

inline ClauseSet gen_tn(int n) { return tn_translation(n).cnf; }

// ---------------------------------------------------------------------------
// Graph text format: "v <id> <charge>" and "e <lit> <v1> [<v2>]" lines,
// a missing second endpoint meaning a loop.
// ---------------------------------------------------------------------------

inline GeneralGraph read_graph(std::istream& in) {
  GeneralGraph g;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "v") {
      long id, rho;
      if (!(ls >> id >> rho) || (rho != 0 && rho != 1))
        throw ParseError("line " + std::to_string(lineno) + ": bad vertex line");
      g.add_vertex(static_cast<int>(id), static_cast<int>(rho));
    } else if (tok == "e") {
      long lit, u;
      if (!(ls >> lit >> u) || lit == 0)
        throw ParseError("line " + std::to_string(lineno) + ": bad edge line");
      long v;
      if (ls >> v)
        g.add_edge(static_cast<Lit>(lit), static_cast<int>(u), static_cast<int>(v));
      else
        g.add_loop(static_cast<Lit>(lit), static_cast<int>(u));
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown line type '" +
                       tok + "'");
    }
  }
  g.validate();
  return g;
}

inline void write_graph(std::ostream& out, const GeneralGraph& g) {
  for (const auto& [w, rho] : g.charge) out << "v " << w << " " << rho << "\n";
  for (const auto& e : g.edges) {
    out << "e " << e.label << " " << e.u;
    if (!e.loop()) out << " " << e.v;
    out << "\n";
  }
}

}  // namespace xorcnf
