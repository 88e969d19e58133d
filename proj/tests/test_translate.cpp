#include <catch2/catch_amalgamated.hpp>

#include "xorcnf/dispatch.hpp"
#include "xorcnf/measure.hpp"
#include "xorcnf/random_gen.hpp"
#include "xorcnf/translate.hpp"

using namespace xorcnf;

namespace {

// Brute-force prime implicates of the parity system's boolean function:
// enumerate every clause over var(S), keep the implicates, take the
// subset-minimal ones.
ClauseSet prime_oracle_of_system(const XorSystem& S) {
  std::vector<Var> vars = S.variables();
  std::vector<PartialAssignment> sols;
  for (size_t a = 0; a < (size_t{1} << vars.size()); ++a) {
    PartialAssignment phi;
    for (size_t j = 0; j < vars.size(); ++j) phi.bind(vars[j], (a >> j) & 1);
    if (S.satisfied_by(phi)) sols.push_back(phi);
  }
  std::vector<Clause> implicates;
  size_t total = 1;
  for (size_t j = 0; j < vars.size(); ++j) total *= 3;
  for (size_t code = 0; code < total; ++code) {
    size_t rest = code;
    std::vector<Lit> lits;
    for (size_t j = 0; j < vars.size(); ++j) {
      int d = static_cast<int>(rest % 3);
      rest /= 3;
      if (d == 1) lits.push_back(vars[j]);
      if (d == 2) lits.push_back(-vars[j]);
    }
    Clause c(std::move(lits));
    bool implied = true;
    for (const auto& phi : sols) {
      bool sat = false;
      for (Lit x : c) sat = sat || *phi.value(x);
      if (!sat) {
        implied = false;
        break;
      }
    }
    if (implied) implicates.push_back(std::move(c));
  }
  return subsumption_eliminate(ClauseSet(std::move(implicates)));
}

}  // namespace

TEST_CASE("x0 of the equivalence constraint") {
  CHECK(x0_clause(XorConstraint({1, 2}, 0)) ==
        ClauseSet({Clause{1, -2}, Clause{-1, 2}}));
}

TEST_CASE("x0 of a ternary constraint: the four odd-complement full clauses") {
  XorConstraint c({1, 2, 3}, 0);
  ClauseSet F = x0_clause(c);
  CHECK(F.num_clauses() == 4);
  for (const Clause& cl : F) {
    CHECK(cl.size() == 3);
    int negs = 0;
    for (Lit x : cl)
      if (!is_positive(x)) ++negs;
    CHECK(negs % 2 == 1);
  }
  // semantically the prime-clause representation of the constraint
  CHECK(F == prime_oracle_of_system(XorSystem({c})));
}

TEST_CASE("x0 of the trivial constraint is top") {
  CHECK(x0_clause(XorConstraint({}, 0)).is_top());
  CHECK_THROWS_AS(x0_clause(XorConstraint({}, 1)), std::domain_error);
}

TEST_CASE("x0 of the dipole pair gives all full clauses") {
  for (int n : {2, 3, 4}) {
    std::vector<Var> vars;
    for (Var v = 1; v <= n; ++v) vars.push_back(v);
    XorSystem S({XorConstraint(vars, 0), XorConstraint(vars, 1)});
    TranslationResult t = x0(S);
    CHECK(t.cnf.num_clauses() == (size_t{1} << n));
    for (const Clause& c : t.cnf) CHECK(c.size() == static_cast<size_t>(n));
    CHECK(t.aux.empty());
  }
}

TEST_CASE("x0 materializes the inconsistent constraint over a fresh variable") {
  XorSystem S({XorConstraint({}, 1), XorConstraint({1, 2}, 0)});
  TranslationResult t = x0(S);
  REQUIRE(t.aux.size() == 1);
  Var z = t.aux.begin()->first;
  CHECK(z == 3);
  CHECK(t.cnf.contains(Clause{z}));
  CHECK(t.cnf.contains(Clause{-z}));
  CHECK(!satisfiable(t.cnf));
}

TEST_CASE("x1 of a ternary constraint matches the known six clauses") {
  TranslationResult t = x1_clause(XorConstraint({1, 2, 3}, 0));
  Var y = 4;
  CHECK(t.cnf == ClauseSet({Clause{1, 2, -y}, Clause{1, -2, y}, Clause{-1, 2, y},
                            Clause{-1, -2, -y}, Clause{y, -3}, Clause{-y, 3}}));
  REQUIRE(t.aux.size() == 1);
  CHECK(t.aux.at(y) == XorConstraint({1, 2}, 0));
}

TEST_CASE("x1 size formulas") {
  // n <= 2: n clauses of length n, no auxiliaries
  TranslationResult t2 = x1_clause(XorConstraint({1, 2}, 0));
  CHECK(t2.cnf.num_clauses() == 2);
  CHECK(t2.cnf.num_literal_occurrences() == 4);
  CHECK(t2.aux.empty());
  // n = 5: 8 variables, 14 clauses, 40 literal occurrences
  TranslationResult t5 = x1_clause(XorConstraint({1, 2, 3, 4, 5}, 0));
  CHECK(t5.cnf.num_vars() == 8);
  CHECK(t5.cnf.num_clauses() == 14);
  CHECK(t5.cnf.num_literal_occurrences() == 40);
}

TEST_CASE("x1 output stays within clause length 3") {
  Rng rng(13);
  for (int i = 0; i < 20; ++i) {
    XorSystem S = random_system(3, 9, rng);
    TranslationResult t = x1(S);
    for (const Clause& c : t.cnf) CHECK(c.size() <= 3);
    // auxiliary bookkeeping covers exactly the fresh variables
    std::vector<Var> orig = S.variables();
    for (Var v : t.cnf.variables()) {
      bool is_orig = std::binary_search(orig.begin(), orig.end(), v);
      CHECK(is_orig == (t.aux.count(v) == 0));
    }
  }
}

TEST_CASE("x1 of the empty system is top") {
  CHECK(x1(XorSystem()).cnf.is_top());
}

TEST_CASE("x1 on acyclic systems is propagation-complete") {
  Rng rng(43);
  for (int i = 0; i < 15; ++i) {
    XorSystem S = random_acyclic_system(3, 8, rng);
    REQUIRE(is_acyclic(S));
    TranslationResult t = x1(S);
    if (t.cnf.num_vars() > 14) continue;
    CHECK(p_hardness(t.cnf).value <= 1);
  }
}

TEST_CASE("x0 on acyclic systems is propagation-complete") {
  Rng rng(47);
  for (int i = 0; i < 10; ++i) {
    XorSystem S = random_acyclic_system(3, 8, rng);
    if (!is_acyclic(S) || S.variables().size() > 12) continue;
    TranslationResult t = x0(S);
    CHECK(p_hardness(t.cnf).value <= 1);
  }
}

TEST_CASE("an eight-variable chain translation is still propagation-complete") {
  TranslationResult t = x1_clause(XorConstraint({1, 2, 3, 4, 5, 6, 7, 8}, 1));
  CHECK(t.cnf.num_vars() == 14);
  CHECK(p_hardness(t.cnf).value == 1);
}

TEST_CASE("sparse variable ids translate like dense ones") {
  XorConstraint sparse({100, 2000, 30000, 400000}, 1);
  TranslationResult t = x1_clause(sparse);
  CHECK(t.cnf.num_vars() == 6);
  CHECK(t.cnf.num_clauses() == 10);
  CHECK(verify_representation(XorSystem({sparse}), t.cnf).ok);
  // auxiliaries sit above the largest input id
  for (auto& [v, def] : t.aux) CHECK(v > 400000);
  CHECK(p_hardness(t.cnf).value <= 1);
}

TEST_CASE("x2 on the shared-triple pair") {
  XorConstraint C({1, 2, 3, 4}, 0), D({1, 2, 3, 5}, 0);
  TranslationResult t = x2(C, D);
  Var s = 6;
  REQUIRE(t.aux.count(s) == 1);
  CHECK(t.aux.at(s) == XorConstraint({1, 2, 3}, 0));
  // represents the pair: model projections match brute force
  auto v = verify_representation(XorSystem({C, D}), t.cnf);
  CHECK(v.ok);
  // and is propagation-complete
  CHECK(p_hardness(t.cnf).value <= 1);
}

TEST_CASE("x2 preconditions produce structured errors") {
  XorConstraint a({1, 2}, 0), b({2, 3}, 0);
  try {
    x2(a, b);
    FAIL("expected precondition error");
  } catch (const X2PreconditionError& e) {
    CHECK(e.which == X2PreconditionError::SHARED_TOO_SMALL);
  }
  XorConstraint c({1, 2}, 0), d({1, 2, 3}, 0);
  try {
    x2(c, d);
    FAIL("expected precondition error");
  } catch (const X2PreconditionError& e) {
    CHECK(e.which == X2PreconditionError::NO_PRIVATE_FIRST);
  }
  CHECK(!x2_applicable(a, b));
  CHECK(x2_applicable(XorConstraint({1, 2, 3}, 1), XorConstraint({2, 3, 4}, 0)));
}

TEST_CASE("xstar of the shared pair has absolute hardness 2") {
  XorSystem S({XorConstraint({1, 2, 3, 4}, 0), XorConstraint({1, 2, 3, 5}, 0)});
  TranslationResult t = xstar(S);
  CHECK(hardness(t.cnf).value == 2);
  CHECK(p_hardness(t.cnf, S.variables()).value <= 1);
}

TEST_CASE("xstar on a singleton equals x1") {
  XorSystem S({XorConstraint({1, 2, 3, 4}, 1)});
  CHECK(xstar(S).cnf == x1(S).cnf);
}

TEST_CASE("xstar rejects unsatisfiable input") {
  XorSystem S({XorConstraint({1, 2}, 0), XorConstraint({1, 2}, 1)});
  CHECK_THROWS_AS(xstar(S), UnsatSystemError);
}

TEST_CASE("prime translation of a single constraint is its x0") {
  XorConstraint c({1, 2, 3, 4}, 1);
  TranslationResult t = prime_translation(XorSystem({c}), 8);
  CHECK(t.cnf == x0_clause(c));
  CHECK(t.aux.empty());
}

TEST_CASE("prime translation matches the brute-force oracle") {
  XorSystem S({XorConstraint({1, 2}, 0), XorConstraint({1, 3}, 0)});
  TranslationResult t = prime_translation(S, 8);
  CHECK(t.cnf == prime_oracle_of_system(S));
  // a = b and a = c: the six equivalence binaries
  CHECK(t.cnf.num_clauses() == 6);
}

TEST_CASE("prime translation of an unsatisfiable pair is the contradiction") {
  std::vector<Var> vars{1, 2, 3};
  XorSystem S({XorConstraint(vars, 0), XorConstraint(vars, 1)});
  TranslationResult t = prime_translation(S, 8);
  CHECK(t.cnf == ClauseSet::contradiction());
}

TEST_CASE("every translation method is representation-sound") {
  Rng rng(59);
  int done = 0;
  while (done < 25) {
    XorSystem S = random_system(3, 6, rng);
    if (!xor_sat(S).sat) continue;
    ++done;
    CHECK(verify_representation(S, x0(S)).ok);
    CHECK(verify_representation(S, x1(S)).ok);
    CHECK(verify_representation(S, xstar(S)).ok);
    if (S.size() <= 2) {
      bool fits = true;
      for (const auto& c : S) fits = fits && c.size() <= 6;
      if (fits && x1(S).cnf.num_clauses() <= 20)
        CHECK(verify_representation(S, prime_translation(S, 6)).ok);
    }
  }
}

TEST_CASE("auto dispatch picks the guaranteed routes") {
  XorSystem chain({XorConstraint({1, 2, 3}, 0), XorConstraint({3, 4, 5}, 0)});
  REQUIRE(is_acyclic(chain));
  AutoTranslation a = translate_auto(chain);
  CHECK(a.result.method == Method::X1);
  CHECK(!a.warning);

  XorSystem pair({XorConstraint({1, 2, 3}, 0), XorConstraint({2, 3, 4}, 1)});
  REQUIRE(!is_acyclic(pair));
  AutoTranslation b = translate_auto(pair);
  CHECK(b.result.method == Method::X2);

  XorSystem tri({XorConstraint({1, 2}, 0), XorConstraint({2, 3}, 0),
                 XorConstraint({1, 3}, 0)});
  REQUIRE(!is_acyclic(tri));
  AutoTranslation c = translate_auto(tri);
  CHECK(c.result.method == Method::XSTAR);

  // beyond the closure cap the dispatcher falls back with a warning
  AutoTranslation d = translate_auto(tri, 2);
  CHECK(d.result.method == Method::X1);
  CHECK(d.warning);
}
