#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <sstream>

#include "xorcnf/measure.hpp"
#include "xorcnf/random_gen.hpp"
#include "xorcnf/structure.hpp"

using namespace xorcnf;

namespace {

// Independent cycle check on the bipartite incidence graph: count edges
// and vertices per connected component; a forest has |E| = |V| - #comp.
bool forest_oracle(const std::vector<std::vector<Var>>& sets) {
  std::map<Var, int> var_id;
  int nv = static_cast<int>(sets.size());
  size_t edges = 0;
  for (const auto& s : sets)
    for (Var v : s) {
      if (!var_id.count(v)) var_id[v] = nv++;
      ++edges;
    }
  // count components by DFS over an adjacency list
  std::vector<std::vector<int>> adj(nv);
  int idx = 0;
  for (const auto& s : sets) {
    for (Var v : s) {
      adj[idx].push_back(var_id[v]);
      adj[var_id[v]].push_back(idx);
    }
    ++idx;
  }
  std::vector<bool> seen(nv, false);
  int comps = 0;
  for (int s = 0; s < nv; ++s) {
    if (seen[s]) continue;
    ++comps;
    std::vector<int> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
    }
  }
  return edges == static_cast<size_t>(nv) - comps;
}

}  // namespace

TEST_CASE("acyclicity of small families") {
  XorSystem chain({XorConstraint({1, 2}, 0), XorConstraint({2, 3}, 0)});
  CHECK(is_acyclic(chain));
  XorSystem shared3({XorConstraint({1, 2, 3, 4}, 0), XorConstraint({1, 2, 3, 5}, 0)});
  CHECK(!is_acyclic(shared3));
  XorSystem triangle({XorConstraint({1, 2}, 0), XorConstraint({1, 3}, 0),
                      XorConstraint({2, 3}, 1)});
  CHECK(!is_acyclic(triangle));
}

TEST_CASE("clause-set granularity: the family of singleton clauses") {
  ClauseSet F({Clause{1, 2}, Clause{2, 3}});
  CHECK(is_acyclic(F));
  ClauseSet G({Clause{1, 2}, Clause{-1, -2}});
  CHECK(!is_acyclic(G));
}

TEST_CASE("interaction graph criteria") {
  // star around variable 9: single-common-variable criterion fires
  std::vector<std::vector<Var>> star{{1, 2, 9}, {3, 9}, {4, 5, 9}};
  InteractionReport s = variable_interaction_graph(star);
  CHECK(s.criterion_c_acyclic());
  CHECK(s.common_var == Var{9});
  CHECK(s.incidence_acyclic);

  // triangle: pairwise single shares but a cycle in the interaction graph
  std::vector<std::vector<Var>> tri{{1, 2}, {2, 3}, {1, 3}};
  InteractionReport t = variable_interaction_graph(tri);
  CHECK(!t.some_pair_shares_two);
  CHECK(!t.interaction_graph_acyclic);
  CHECK(!t.criterion_b_acyclic());
  CHECK(!t.incidence_acyclic);

  // a pair sharing two variables is already cyclic
  std::vector<std::vector<Var>> two{{1, 2, 3}, {2, 3}};
  InteractionReport u = variable_interaction_graph(two);
  CHECK(u.criterion_a_cyclic());
  CHECK(!u.incidence_acyclic);

  // disjoint family
  std::vector<std::vector<Var>> dis{{1, 2}, {3, 4}};
  InteractionReport d = variable_interaction_graph(dis);
  CHECK(d.incidence_acyclic);
  CHECK(d.criterion_b_acyclic());
  CHECK(d.criterion_c_acyclic());
}

TEST_CASE("union-find acyclicity agrees with the component-count oracle") {
  Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::vector<Var>> sets;
    int m = 1 + static_cast<int>(rand_below(rng, 4));
    for (int j = 0; j < m; ++j) {
      std::set<Var> s;
      int len = 1 + static_cast<int>(rand_below(rng, 3));
      while (static_cast<int>(s.size()) < len)
        s.insert(static_cast<Var>(1 + rand_below(rng, 6)));
      sets.emplace_back(s.begin(), s.end());
    }
    CHECK(is_acyclic_family(sets) == forest_oracle(sets));
  }
}

TEST_CASE("tseitin of the dipole is the unsatisfiable pair") {
  XorSystem S = dipole_system(3);
  REQUIRE(S.size() == 2);
  CHECK(S.constraints()[0] == XorConstraint({1, 2, 3}, 0));
  CHECK(S.constraints()[1] == XorConstraint({1, 2, 3}, 1));
  CHECK(!xor_sat(S).sat);
}

TEST_CASE("tseitin of a bouquet is the singleton") {
  Clause c{1, -2, 3};
  XorSystem S = tseitin(bouquet_graph(c));
  REQUIRE(S.size() == 1);
  CHECK(S.constraints()[0] == XorConstraint::from_clause(c));
}

TEST_CASE("tseitin of the split chain graph matches the chain translation") {
  // vertices v1 (loops x1, x2 and edge y2), v3 (edge y2, loop x3): the
  // same system the chain splitting of {x1,x2,x3} produces.
  GeneralGraph g;
  g.add_vertex(1, 0);
  g.add_vertex(3, 0);
  g.add_loop(1, 1);
  g.add_loop(2, 1);
  g.add_edge(4, 1, 3);  // chain variable
  g.add_loop(3, 3);
  XorSystem S = tseitin(g);
  CHECK(x0(S).cnf == x1_clause(XorConstraint({1, 2, 3}, 0)).cnf);
}

TEST_CASE("tseitin satisfiability follows the loop-free odd-charge rule") {
  // Every edge occurs in exactly two vertex constraints, so a loop-free
  // connected graph of odd total charge sums to 0 = 1. Componentwise this
  // is exact: unsatisfiable iff some connected component is loop-free with
  // odd charge. Cross-checked against Gaussian elimination.
  Rng rng(71);
  int used = 0;
  for (int i = 0; i < 200 && used < 120; ++i) {
    GeneralGraph g;
    int nv = 2 + static_cast<int>(rand_below(rng, 3));
    for (int v = 1; v <= nv; ++v) g.add_vertex(v, static_cast<int>(rng() & 1));
    int ne = 1 + static_cast<int>(rand_below(rng, 8));
    for (int e = 1; e <= ne; ++e) {
      Lit label = (rng() & 1) ? e : -e;
      int u = 1 + static_cast<int>(rand_below(rng, static_cast<size_t>(nv)));
      int w = 1 + static_cast<int>(rand_below(rng, static_cast<size_t>(nv)));
      g.add_edge(label, u, w);
    }
    try {
      g.validate();
    } catch (const std::invalid_argument&) {
      continue;  // isolated vertex of charge 1
    }
    ++used;
    // connected components via union-find over vertices
    std::map<int, int> root;
    for (auto& [v, rho] : g.charge) root[v] = v;
    std::function<int(int)> find = [&](int v) {
      while (root[v] != v) v = root[v] = root[root[v]];
      return v;
    };
    for (const auto& e : g.edges) root[find(e.u)] = find(e.v);
    std::map<int, std::pair<bool, int>> comp;  // root -> (has loop, charge)
    for (auto& [v, rho] : g.charge) {
      auto& c = comp[find(v)];
      c.second ^= rho;
    }
    for (const auto& e : g.edges)
      if (e.loop()) comp[find(e.u)].first = true;
    bool expect_unsat = false;
    for (auto& [r, c] : comp)
      if (!c.first && c.second == 1) expect_unsat = true;
    CHECK(xor_sat(tseitin(g)).sat == !expect_unsat);
  }
  REQUIRE(used >= 100);
}

TEST_CASE("graph invariants are enforced") {
  GeneralGraph g;
  g.add_vertex(1, 1);
  CHECK_THROWS_AS(g.validate(), std::invalid_argument);  // isolated charge 1
  GeneralGraph h;
  h.add_vertex(1, 0);
  h.add_loop(2, 1);
  h.add_loop(-2, 1);  // repeated variable among edge labels
  CHECK_THROWS_AS(h.validate(), std::invalid_argument);
}

TEST_CASE("tn counts and unsatisfiability") {
  for (int n = 2; n <= 8; ++n) {
    ClauseSet tn = gen_tn(n);
    CHECK(tn.num_vars() == static_cast<size_t>(3 * n - 4));
    CHECK(tn.num_clauses() == static_cast<size_t>(8 * n - 12));
    CHECK(tn.num_literal_occurrences() == static_cast<size_t>(24 * n - 40));
    for (const Clause& c : tn) CHECK(c.size() <= 3);
    if (n <= 6) CHECK(!satisfiable(tn));
  }
  CHECK_THROWS_AS(gen_tn(1), std::invalid_argument);
}

TEST_CASE("graph format round trip") {
  GeneralGraph g = dipole_graph(3);
  g.add_vertex(7, 0);
  g.add_loop(9, 7);
  std::ostringstream out;
  write_graph(out, g);
  std::istringstream in(out.str());
  GeneralGraph back = read_graph(in);
  CHECK(tseitin(back) == tseitin(g));
  std::istringstream bad("v 1 2\n");
  CHECK_THROWS_AS(read_graph(bad), ParseError);
}
