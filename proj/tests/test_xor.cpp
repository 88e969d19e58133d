#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "xorcnf/random_gen.hpp"
#include "xorcnf/solver.hpp"
#include "xorcnf/xor_system.hpp"

using namespace xorcnf;

namespace {

// All total assignments over vars satisfying the system.
std::vector<PartialAssignment> solutions(const XorSystem& S,
                                         const std::vector<Var>& vars) {
  std::vector<PartialAssignment> out;
  for (size_t a = 0; a < (size_t{1} << vars.size()); ++a) {
    PartialAssignment phi;
    for (size_t j = 0; j < vars.size(); ++j) phi.bind(vars[j], (a >> j) & 1);
    if (S.satisfied_by(phi)) out.push_back(phi);
  }
  return out;
}

bool implies_semantically(const XorSystem& S, const XorConstraint& c,
                          const std::vector<Var>& vars) {
  for (const auto& phi : solutions(S, vars)) {
    bool covered = true;
    for (Var v : c.vars())
      if (!phi.binds(v)) covered = false;
    if (!covered) return false;  // constraint over unknown variables
    if (!c.satisfied_by(phi)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("constraint canonicalization cancels repeated variables") {
  XorConstraint c({3, 1, 3, 2}, 1);
  CHECK(c.vars() == std::vector<Var>{1, 2});
  CHECK(c.rhs() == 1);
  CHECK(XorConstraint({5, 5}, 0).is_trivial());
  CHECK(XorConstraint({}, 1).is_inconsistent());
}

TEST_CASE("clause view round trip") {
  Clause c{1, -2, -3};
  XorConstraint k = XorConstraint::from_clause(c);
  CHECK(k.vars() == std::vector<Var>{1, 2, 3});
  CHECK(k.rhs() == 0);  // two complements
  // Equivalent clauses (same variables, same complement parity) collapse.
  CHECK(XorConstraint::from_clause(Clause{-1, 2, -3}) == k);
  CHECK(XorConstraint::from_clause(Clause{-1, -2, 3}) ==
        XorConstraint::from_clause(Clause{1, 2, 3}));
  CHECK(XorConstraint::from_clause(Clause{-1, 2, 3}) !=
        XorConstraint::from_clause(Clause{1, 2, 3}));
  // rhs 1 complements the smallest variable in the canonical clause view.
  CHECK(XorConstraint({4, 7}, 1).to_clause() == Clause{-4, 7});
  CHECK(XorConstraint({4, 7}, 0).to_clause() == Clause{4, 7});
  CHECK_THROWS_AS(XorConstraint({}, 1).to_clause(), std::domain_error);
}

TEST_CASE("canonicalization is satisfaction-preserving, exhaustively") {
  Rng rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    ClauseSet F = random_clause_set(1, 5, rng);
    const Clause& c = *F.begin();
    XorConstraint k = XorConstraint::from_clause(c);
    std::vector<Var> vars;
    for (Lit x : c) vars.push_back(var_of(x));
    for (size_t a = 0; a < (size_t{1} << vars.size()); ++a) {
      PartialAssignment phi;
      for (size_t j = 0; j < vars.size(); ++j) phi.bind(vars[j], (a >> j) & 1);
      // even number of literals set to 1 <-> constraint satisfied
      int ones = 0;
      for (Lit x : c)
        if (*phi.value(x)) ++ones;
      CHECK((ones % 2 == 0) == k.satisfied_by(phi));
    }
  }
}

TEST_CASE("matrix view of a clause-set under the parity interpretation") {
  ClauseSet F({Clause{1, -2}, Clause{-2, -3}, Clause{1, 3}});
  XorSystem S = from_xor_clauses(F);
  REQUIRE(S.size() == 3);
  CHECK(S.constraints()[0] == XorConstraint({1, 2}, 1));
  CHECK(S.constraints()[1] == XorConstraint({1, 3}, 0));
  CHECK(S.constraints()[2] == XorConstraint({2, 3}, 0));
  CHECK(from_xor_clauses(ClauseSet()).empty());
  // {x},{-x} read as the inconsistent pair x=0, x=1.
  XorSystem P = from_xor_clauses(ClauseSet({Clause{4}, Clause{-4}}));
  REQUIRE(P.size() == 2);
  CHECK(P.constraints()[0] == XorConstraint({4}, 0));
  CHECK(P.constraints()[1] == XorConstraint({4}, 1));
}

TEST_CASE("xor_sum") {
  XorConstraint C({1, 2, 3, 4}, 0), D({1, 2, 3, 5}, 0);
  CHECK((C ^ D) == XorConstraint({4, 5}, 0));
  CHECK(xor_sum(XorSystem()) == XorConstraint({}, 0));
  CHECK(xor_sum(XorSystem({XorConstraint({1, 2}, 0), XorConstraint({1, 2}, 1)}))
            .is_inconsistent());
}

TEST_CASE("xor_sat finds the inconsistent triangle with a full certificate") {
  XorSystem S({XorConstraint({1, 2}, 0), XorConstraint({1, 3}, 0),
               XorConstraint({2, 3}, 1)});
  auto res = xor_sat(S);
  REQUIRE(!res.sat);
  CHECK(res.certificate.size() == 3);
  XorConstraint sum;
  for (size_t i : res.certificate) sum = sum ^ S.constraints()[i];
  CHECK(sum.is_inconsistent());
}

TEST_CASE("xor_sat returns a model") {
  XorSystem S({XorConstraint({1, 2}, 1)});
  auto res = xor_sat(S);
  REQUIRE(res.sat);
  CHECK(S.satisfied_by(res.model));
}

TEST_CASE("xor_sat agrees with model enumeration") {
  Rng rng(19);
  for (int i = 0; i < 120; ++i) {
    int n = 4 + static_cast<int>(rand_below(rng, 7));  // up to 10 variables
    XorSystem S = random_system(4, n, rng);
    auto res = xor_sat(S);
    bool enum_sat = !solutions(S, S.variables()).empty();
    CHECK(res.sat == enum_sat);
    if (res.sat) CHECK(S.satisfied_by(res.model));
    else {
      XorConstraint sum;
      for (size_t i2 : res.certificate) sum = sum ^ S.constraints()[i2];
      CHECK(sum.is_inconsistent());
    }
  }
}

TEST_CASE("xor_implies on the shared-sum pair") {
  XorSystem S({XorConstraint({1, 2, 3, 4}, 0), XorConstraint({1, 2, 3, 5}, 0)});
  CHECK(xor_implies(S, XorConstraint({4, 5}, 0)));
  CHECK(!xor_implies(S, XorConstraint({4, 5}, 1)));
  for (const auto& c : S) CHECK(xor_implies(S, c));
  XorSystem bad({XorConstraint({1}, 0), XorConstraint({1}, 1)});
  CHECK_THROWS_AS(xor_implies(bad, XorConstraint({1}, 0)), UnsatSystemError);
}

TEST_CASE("xor_implies equals semantic implication exhaustively") {
  Rng rng(29);
  int done = 0;
  while (done < 40) {
    XorSystem S = random_system(4, 5, rng);
    if (!xor_sat(S).sat) continue;
    ++done;
    std::vector<Var> vars = S.variables();
    // every constraint over the system's variables, both parities
    for (uint64_t mask = 0; mask < (uint64_t{1} << vars.size()); ++mask) {
      std::vector<Var> vs;
      for (size_t j = 0; j < vars.size(); ++j)
        if (mask & (uint64_t{1} << j)) vs.push_back(vars[j]);
      for (int rhs = 0; rhs <= 1; ++rhs) {
        XorConstraint c(vs, rhs);
        CHECK(xor_implies(S, c) == implies_semantically(S, c, vars));
      }
    }
  }
}

TEST_CASE("closure_star of the shared pair") {
  XorConstraint C({1, 2, 3, 4}, 0), D({1, 2, 3, 5}, 0);
  XorSystem closed = closure_star(XorSystem({C, D}));
  CHECK(closed == XorSystem({C, D, XorConstraint({4, 5}, 0)}));
}

TEST_CASE("closure_star of a singleton is itself") {
  XorSystem S({XorConstraint({1, 2, 3}, 1)});
  CHECK(closure_star(S) == S);
}

TEST_CASE("closure_star stays within the subset bound and is implied") {
  Rng rng(37);
  for (int i = 0; i < 30; ++i) {
    XorSystem S = random_satisfiable_system(3, 6, rng);
    XorSystem closed = closure_star(S);
    CHECK(closed.size() <= 7);  // 2^3 - 1
    for (const auto& c : closed) CHECK(xor_implies(S, c));
    CHECK(closure_star(closed) == closed);  // idempotent
  }
}

TEST_CASE("closure_star rejects unsatisfiable input with a certificate") {
  XorSystem S({XorConstraint({1, 2}, 0), XorConstraint({1, 3}, 0),
               XorConstraint({2, 3}, 1)});
  try {
    closure_star(S);
    FAIL("expected UnsatSystemError");
  } catch (const UnsatSystemError& e) {
    XorConstraint sum;
    for (size_t i : e.certificate) sum = sum ^ S.constraints()[i];
    CHECK(sum.is_inconsistent());
  }
  CHECK_THROWS_AS(closure_star(S, 2), CapExceeded);
}

TEST_CASE("normalize_basis") {
  CHECK(normalize_basis(XorSystem({XorConstraint({1, 2}, 0), XorConstraint({2, 1}, 0)}))
            .size() == 1);
  XorSystem tri({XorConstraint({1, 2}, 0), XorConstraint({2, 3}, 0),
                 XorConstraint({1, 3}, 0)});
  XorSystem basis = normalize_basis(tri);
  CHECK(basis.size() == 2);
  // equivalent: identical solution sets over the original variables
  auto a = solutions(tri, tri.variables());
  auto b = solutions(basis, tri.variables());
  CHECK(a == b);
  CHECK(normalize_basis(XorSystem()).empty());
}

TEST_CASE("doping adds one fresh variable per clause") {
  // y1+y2 = 1, y1 = 0, y2 = 0 gains z-variables 3, 4, 5.
  XorSystem S({XorConstraint({1, 2}, 1), XorConstraint({1}, 0), XorConstraint({2}, 0)});
  XorSystem doped = dope(S);
  // fresh variables 3, 4, 5 in canonical row order: {1}, {1,2}, {2}
  CHECK(doped == XorSystem({XorConstraint({1, 3}, 0), XorConstraint({1, 2, 4}, 1),
                            XorConstraint({2, 5}, 0)}));

  CHECK(dope(ClauseSet()).is_top());
  ClauseSet F({Clause{1, 2}, Clause{-1, 3}});
  ClauseSet FD = dope(F);
  CHECK(FD.num_clauses() == F.num_clauses());
  CHECK(FD.num_literal_occurrences() ==
        F.num_literal_occurrences() + F.num_clauses());
}

TEST_CASE("xnf round trip, both conventions") {
  XorSystem S({XorConstraint({1, 2, 3}, 1), XorConstraint({2, 4}, 0)});
  std::ostringstream out;
  write_xnf(out, S);
  std::istringstream in(out.str());
  CHECK(read_xnf(in).system == S);

  // Alternative convention: "x 1 2 0" means v1+v2 = 1.
  std::istringstream alt("x 1 2 0\nx -1 3 0\n");
  XorSystem A = read_xnf(alt, true).system;
  REQUIRE(A.size() == 2);
  CHECK(A.constraints()[0] == XorConstraint({1, 2}, 1));
  CHECK(A.constraints()[1] == XorConstraint({1, 3}, 0));

  std::istringstream bad("x 1 2\n");
  CHECK_THROWS_AS(read_xnf(bad), ParseError);
}

TEST_CASE("xnf writes the inconsistent constraint as a fresh complementary pair") {
  XorSystem S({XorConstraint({}, 1), XorConstraint({1, 2}, 0)});
  std::ostringstream out;
  write_xnf(out, S);
  std::istringstream in(out.str());
  XorSystem back = read_xnf(in).system;
  CHECK(!xor_sat(back).sat);
}
