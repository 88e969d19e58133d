#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "xorcnf/dimacs.hpp"
#include "xorcnf/random_gen.hpp"
#include "xorcnf/translate.hpp"

using namespace xorcnf;

TEST_CASE("dimacs read") {
  std::istringstream in(
      "c a comment\n"
      "p cnf 3 2\n"
      "1 -2 0\n"
      "2 3 0\n");
  DimacsFile f = read_dimacs(in);
  CHECK(f.declared_vars == 3);
  CHECK(f.declared_clauses == 2);
  CHECK(f.cnf == ClauseSet({Clause{1, -2}, Clause{2, 3}}));
  CHECK(f.comments.size() == 1);
}

TEST_CASE("dimacs multi-clause lines and split clauses") {
  std::istringstream in("p cnf 2 2\n1 0 -1 2 0\n");
  CHECK(read_dimacs(in).cnf == ClauseSet({Clause{1}, Clause{-1, 2}}));
  std::istringstream dangling("p cnf 1 1\n1\n");
  CHECK_THROWS_AS(read_dimacs(dangling), ParseError);
  std::istringstream taut("p cnf 1 1\n1 -1 0\n");
  CHECK_THROWS_AS(read_dimacs(taut), ParseError);
  std::istringstream badhdr("p dnf 1 1\n");
  CHECK_THROWS_AS(read_dimacs(badhdr), ParseError);
}

TEST_CASE("dimacs write/read round trip with auxiliary definitions") {
  TranslationResult t = x1_clause(XorConstraint({1, 2, 3, 4}, 1));
  std::ostringstream out;
  write_dimacs(out, t.cnf, t.aux);
  std::istringstream in(out.str());
  DimacsFile f = read_dimacs(in);
  CHECK(f.cnf == t.cnf);
  REQUIRE(f.aux.size() == t.aux.size());
  for (auto& [v, def] : t.aux) {
    REQUIRE(f.aux.count(v) == 1);
    CHECK(f.aux.at(v) == def);
  }
}

TEST_CASE("aux comment syntax") {
  Var v = 0;
  XorConstraint def;
  CHECK(parse_aux_comment("c aux 9 := 1 2 = 0", &v, &def));
  CHECK(v == 9);
  CHECK(def == XorConstraint({1, 2}, 0));
  CHECK(parse_aux_comment("c aux 5 := = 1", &v, &def));
  CHECK(def == XorConstraint({}, 1));
  CHECK(!parse_aux_comment("c aux x := 1 = 0", &v, &def));
  CHECK(!parse_aux_comment("c plain comment", &v, &def));
  CHECK(format_aux_comment(9, XorConstraint({1, 2}, 0)) == "c aux 9 := 1 2 = 0");
}

TEST_CASE("writers are deterministic") {
  Rng rng1(5), rng2(5);
  XorSystem a = random_system(4, 8, rng1);
  XorSystem b = random_system(4, 8, rng2);
  std::ostringstream o1, o2;
  write_xnf(o1, a);
  write_xnf(o2, b);
  CHECK(o1.str() == o2.str());
  TranslationResult t = x1(a);
  std::ostringstream d1, d2;
  write_dimacs(d1, t.cnf, t.aux);
  write_dimacs(d2, x1(b).cnf, x1(b).aux);
  CHECK(d1.str() == d2.str());
}

TEST_CASE("empty clause-set writes the trivial header") {
  std::ostringstream out;
  write_dimacs(out, ClauseSet());
  CHECK(out.str() == "p cnf 0 0\n");
}
