#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/xor_system.hpp"

namespace xorcnf {

struct DimacsFile {
  ClauseSet cnf;
  std::vector<std::string> comments;
  /// Auxiliary variable definitions recovered from "c aux ..." comments.
  std::map<Var, XorConstraint> aux;
  long declared_vars = 0;
  long declared_clauses = 0;
};

// "c aux 9 := 1 2 = 0" defines variable 9 as the xor of v1, v2 and the
// trailing constant: the listed variables xor to 9 exactly when rhs is 0.
inline std::string format_aux_comment(Var v, const XorConstraint& def) {
  std::ostringstream out;
  out << "c aux " << v << " :=";
  for (Var w : def.vars()) out << " " << w;
  out << " = " << def.rhs();
  return out.str();
}

inline bool parse_aux_comment(const std::string& line, Var* v, XorConstraint* def) {
  std::istringstream ls(line);
  std::string c, aux, assign;
  long var = 0;
  if (!(ls >> c >> aux >> var >> assign)) return false;
  if (c != "c" || aux != "aux" || assign != ":=" || var <= 0) return false;
  std::vector<Var> vars;
  std::string tok;
  while (ls >> tok) {
    if (tok == "=") {
      long rhs;
      if (!(ls >> rhs) || (rhs != 0 && rhs != 1)) return false;
      *v = static_cast<Var>(var);
      *def = XorConstraint(std::move(vars), static_cast<int>(rhs));
      return true;
    }
    try {
      long w = std::stol(tok);
      if (w <= 0) return false;
      vars.push_back(static_cast<Var>(w));
    } catch (const std::exception&) {
      return false;
    }
  }
  return false;
}

inline DimacsFile read_dimacs(std::istream& in) {
  DimacsFile file;
  std::vector<Clause> clauses;
  std::vector<Lit> buf;
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
      Var v;
      XorConstraint def;
      if (parse_aux_comment(line, &v, &def)) file.aux[v] = def;
      continue;
    }
    if (tok == "p") {
      std::string fmt;
      if (saw_header || !(ls >> fmt >> file.declared_vars >> file.declared_clauses) ||
          fmt != "cnf")
        throw ParseError("line " + std::to_string(lineno) + ": bad cnf header");
      saw_header = true;
      continue;
    }
    // Clause line(s); the leading token is already a literal.
    ls.clear();
    ls.seekg(0);
    long lit;
    while (ls >> lit) {
      if (lit == 0) {
        try {
          clauses.push_back(Clause(std::vector<Lit>(buf.begin(), buf.end())));
        } catch (const std::invalid_argument& e) {
          throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
        }
        buf.clear();
      } else {
        buf.push_back(static_cast<Lit>(lit));
      }
    }
    if (ls.fail() && !ls.eof())
      throw ParseError("line " + std::to_string(lineno) + ": bad literal token");
  }
  if (!buf.empty())
    throw ParseError("line " + std::to_string(lineno) + ": clause missing terminating 0");
  file.cnf = ClauseSet(std::move(clauses));
  return file;
}

inline void write_dimacs(std::ostream& out, const ClauseSet& F,
                         const std::map<Var, XorConstraint>& aux = {},
                         const std::vector<std::string>& extra_comments = {}) {
  for (const auto& c : extra_comments) out << c << "\n";
  for (const auto& [v, def] : aux) out << format_aux_comment(v, def) << "\n";
  out << "p cnf " << F.max_var() << " " << F.num_clauses() << "\n";
  for (const Clause& c : F) {
    for (Lit x : c) out << x << " ";
    out << "0\n";
  }
}

}  // namespace xorcnf
