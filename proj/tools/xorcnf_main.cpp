// Command-line front end: translate parity constraint systems to CNF,
// measure representation quality, generate benchmark families, and verify
// representations and resolution proofs.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "xorcnf/dimacs.hpp"
#include "xorcnf/dispatch.hpp"
#include "xorcnf/measure.hpp"
#include "xorcnf/monotone.hpp"
#include "xorcnf/random_gen.hpp"
#include "xorcnf/resolution.hpp"
#include "xorcnf/structure.hpp"
#include "xorcnf/translate.hpp"
#include "xorcnf/xor_system.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSemantic = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

int env_int(const char* name, int fallback) {
  const char* s = std::getenv(name);
  if (!s) return fallback;
  try {
    return std::stoi(s);
  } catch (const std::exception&) {
    return fallback;
  }
}

// Environment overrides mirror the cap flags; explicit flags win.
xorcnf::Caps caps_from_env() {
  xorcnf::Caps caps;
  caps.dp_vars = env_int("XORCNF_DP_VARS", caps.dp_vars);
  caps.pc_vars = env_int("XORCNF_PC_VARS", caps.pc_vars);
  caps.scope_vars = env_int("XORCNF_SCOPE_VARS", caps.scope_vars);
  caps.width_vars = env_int("XORCNF_WIDTH_VARS", caps.width_vars);
  caps.prime_clauses = env_int("XORCNF_PRIME_CLAUSES", caps.prime_clauses);
  caps.closure_terms = env_int("XORCNF_CLOSURE_TERMS", caps.closure_terms);
  caps.enum_vars = env_int("XORCNF_ENUM_VARS", caps.enum_vars);
  caps.forced_vars = env_int("XORCNF_FORCED_VARS", caps.forced_vars);
  return caps;
}

std::istream* open_input(const std::string& path, std::ifstream& file) {
  if (path.empty() || path == "-") return &std::cin;
  file.open(path);
  if (!file) throw xorcnf::ParseError("cannot open input file: " + path);
  return &file;
}

std::ostream* open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return &std::cout;
  file.open(path);
  if (!file) throw xorcnf::ParseError("cannot open output file: " + path);
  return &file;
}

struct CmdError {
  int code;
  std::string message;
};

int cmd_translate(const std::string& in_path, const std::string& out_path,
                  const std::string& method, bool alt_xnf, int prime_len,
                  const xorcnf::Caps& caps) {
  using namespace xorcnf;
  std::ifstream fin;
  XnfFile xnf = read_xnf(*open_input(in_path, fin), alt_xnf);
  const XorSystem& S = xnf.system;

  TranslationResult res;
  std::vector<std::string> comments;
  try {
    if (method == "auto") {
      AutoTranslation at = translate_auto(S, caps.closure_terms);
      res = std::move(at.result);
      comments.push_back("c method " + std::string(method_name(res.method)));
      comments.push_back("c guarantee " + at.guarantee);
      if (at.warning) std::cerr << "warning: " << at.guarantee << "\n";
    } else if (method == "x0") {
      res = x0(S);
    } else if (method == "x1") {
      res = x1(S);
    } else if (method == "x2") {
      const auto& rows = S.constraints();
      if (rows.size() != 2) throw CmdError{kExitUsage, "x2 needs exactly two constraints"};
      res = x2(rows[0], rows[1]);
    } else if (method == "xstar") {
      res = xstar(S, caps.closure_terms);
    } else if (method == "prime") {
      res = prime_translation(S, prime_len, caps.prime_clauses);
    } else {
      throw CmdError{kExitUsage, "unknown method: " + method};
    }
  } catch (const UnsatSystemError& e) {
    std::cerr << "unsatisfiable input system; inconsistent subset (0-based):";
    for (size_t i : e.certificate) std::cerr << " " << i;
    std::cerr << "\n";
    return kExitSemantic;
  } catch (const X2PreconditionError& e) {
    std::cerr << "x2 precondition failed: " << e.what() << "\n";
    return kExitSemantic;
  }
  if (method != "auto")
    comments.push_back("c method " + std::string(method_name(res.method)));
  std::ofstream fout;
  write_dimacs(*open_output(out_path, fout), res.cnf, res.aux, comments);
  return kExitOk;
}

std::vector<xorcnf::Var> parse_scope(const std::string& scope,
                                     const xorcnf::DimacsFile& file) {
  using namespace xorcnf;
  if (scope == "all") return file.cnf.variables();
  if (scope == "orig") {
    std::vector<Var> vars;
    for (Var v : file.cnf.variables())
      if (!file.aux.count(v)) vars.push_back(v);
    return vars;
  }
  std::vector<Var> vars;
  std::stringstream ss(scope);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    try {
      vars.push_back(std::stoi(tok));
    } catch (const std::exception&) {
      throw CmdError{kExitUsage, "bad scope variable: " + tok};
    }
  }
  return vars;
}

int cmd_measure(const std::string& in_path, const std::string& kind_flag,
                const std::string& scope, long sample, uint64_t seed,
                bool machine, const xorcnf::Caps& caps) {
  using namespace xorcnf;
  std::ifstream fin;
  DimacsFile file = read_dimacs(*open_input(in_path, fin));
  std::vector<Var> scope_vars = parse_scope(scope, file);
  MeasureKind kind;
  if (kind_flag == "hd") kind = MeasureKind::HD;
  else if (kind_flag == "phd") kind = MeasureKind::PHD;
  else if (kind_flag == "whd") kind = MeasureKind::WHD;
  else if (kind_flag == "wid") kind = MeasureKind::WID;
  else throw CmdError{kExitUsage, "pick one of --hd --phd --whd --wid"};

  HardnessReport rep;
  if (sample > 0) {
    rep = measure_sampled(kind, file.cnf, scope_vars, static_cast<size_t>(sample),
                          seed, caps);
  } else {
    switch (kind) {
      case MeasureKind::HD: rep = hardness(file.cnf, scope_vars, caps); break;
      case MeasureKind::PHD: rep = p_hardness(file.cnf, scope_vars, caps); break;
      case MeasureKind::WHD: rep = w_hardness(file.cnf, scope_vars, caps); break;
      case MeasureKind::WID: rep = sym_width(file.cnf, scope_vars, caps); break;
    }
  }
  std::ostringstream scope_str;
  if (scope == "all" || scope == "orig") scope_str << scope;
  else scope_str << rep.scope.size() << " vars";
  std::cout << measure_name(rep.kind) << "(" << (in_path.empty() ? "-" : in_path)
            << ") " << (rep.lower_bound_only ? ">= " : "= ") << rep.value
            << " scope " << scope_str.str() << "\n";
  if (machine) {
    std::cout << "r " << measure_name(rep.kind) << " "
              << (rep.lower_bound_only ? "lower-bound" : "exact") << " "
              << rep.value << " scope";
    for (Var v : rep.scope) std::cout << " " << v;
    std::cout << " witness";
    for (auto& [v, b] : rep.witness.bindings()) std::cout << " " << (b ? v : -v);
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_gen(const std::string& family, int n, int m, int maxlen, uint64_t seed,
            const std::string& graph_path, const std::string& out_path) {
  using namespace xorcnf;
  std::ofstream fout;
  std::ostream& out = *open_output(out_path, fout);
  if (family == "tn") {
    if (n < 2) throw CmdError{kExitUsage, "gen tn needs n >= 2"};
    TranslationResult res = tn_translation(n);
    write_dimacs(out, res.cnf, res.aux, {"c tn " + std::to_string(n)});
    return kExitOk;
  }
  if (family == "dipole") {
    if (n < 1) throw CmdError{kExitUsage, "gen dipole needs n >= 1"};
    write_xnf(out, dipole_system(n));
    return kExitOk;
  }
  if (family == "random") {
    if (m <= 0 || n <= 0) throw CmdError{kExitUsage, "gen random needs --m and --n"};
    Rng rng(seed);
    write_xnf(out, random_system(m, n, rng, maxlen));
    return kExitOk;
  }
  if (family == "tseitin") {
    std::ifstream gin;
    GeneralGraph g = read_graph(*open_input(graph_path, gin));
    write_xnf(out, tseitin(g));
    return kExitOk;
  }
  throw CmdError{kExitUsage, "unknown family: " + family +
                                 " (expected tn, dipole, random, tseitin)"};
}

int cmd_verify(const std::string& xnf_path, const std::string& cnf_path,
               bool alt_xnf, long sample, uint64_t seed, const xorcnf::Caps& caps) {
  using namespace xorcnf;
  std::ifstream fx, fc;
  XnfFile xnf = read_xnf(*open_input(xnf_path, fx), alt_xnf);
  DimacsFile dim = read_dimacs(*open_input(cnf_path, fc));
  VerifyResult res =
      sample > 0 ? verify_representation_sampled(xnf.system, dim.cnf,
                                                 static_cast<size_t>(sample), seed)
                 : verify_representation(xnf.system, dim.cnf, caps);
  if (res.ok) {
    std::cout << (res.complete ? "PASS" : "PASS (incomplete: sampled)") << "\n";
    return kExitOk;
  }
  std::cout << "FAIL " << res.detail << "\n";
  std::cout << "witness";
  for (auto& [v, b] : res.witness->bindings()) std::cout << " " << (b ? v : -v);
  std::cout << "\n";
  return kExitSemantic;
}

int cmd_check_proof(const std::string& cnf_path, const std::string& proof_path,
                    bool lax, bool allow_any_target) {
  using namespace xorcnf;
  std::ifstream fc, fp;
  DimacsFile dim = read_dimacs(*open_input(cnf_path, fc));
  ResolutionProof proof = read_proof(*open_input(proof_path, fp));
  ProofCheck chk = check_resolution(proof, dim.cnf, !lax);
  if (!chk.ok) {
    std::cout << "INVALID step " << (chk.bad_step + 1) << ": " << chk.error << "\n";
    return kExitSemantic;
  }
  if (!allow_any_target && !chk.ends_with_empty_clause) {
    std::cout << "INVALID: derivation does not end with the empty clause\n";
    return kExitSemantic;
  }
  std::cout << "VALID steps " << proof.size() << " max-clause-length "
            << chk.max_clause_length << " max-shorter-parent "
            << chk.max_shorter_parent << "\n";
  return kExitOk;
}

int cmd_check_acyclic(const std::string& in_path, bool alt_xnf) {
  using namespace xorcnf;
  std::ifstream fin;
  XnfFile xnf = read_xnf(*open_input(in_path, fin), alt_xnf);
  std::vector<std::vector<Var>> sets;
  for (const auto& c : xnf.system) sets.push_back(c.vars());
  InteractionReport rep = variable_interaction_graph(sets);
  std::cout << (rep.incidence_acyclic ? "ACYCLIC" : "CYCLIC") << "\n";
  std::cout << "pair-shares-two " << (rep.some_pair_shares_two ? "yes" : "no")
            << "\n";
  std::cout << "interaction-graph-acyclic "
            << (rep.interaction_graph_acyclic ? "yes" : "no") << "\n";
  std::cout << "single-common-variable " << (rep.single_common_var ? "yes" : "no")
            << "\n";
  return rep.incidence_acyclic ? kExitOk : kExitSemantic;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parity-constraint translation and measurement toolkit"};
  app.require_subcommand(1);
  xorcnf::Caps caps = caps_from_env();

  std::string in_path, out_path;
  bool alt_xnf = false;

  auto* t = app.add_subcommand("translate", "translate an XNF system to DIMACS CNF");
  std::string method = "auto";
  int prime_len = 8;
  t->add_option("--method", method, "auto|x0|x1|x2|xstar|prime")->capture_default_str();
  t->add_option("--in,-i", in_path, "input XNF file (default stdin)");
  t->add_option("--out,-o", out_path, "output DIMACS file (default stdout)");
  t->add_flag("--alt-xnf", alt_xnf, "read 'x' lines as xor of positive vars = 1, signs adjusting");
  t->add_option("--prime-len", prime_len, "maximal constraint length for --method prime")
      ->capture_default_str();
  t->add_option("--closure-cap", caps.closure_terms, "subset-sum closure cap");
  t->add_option("--prime-cap", caps.prime_clauses, "prime subset-method clause cap");

  auto* ms = app.add_subcommand("measure", "measure a DIMACS clause-set");
  std::string scope = "all";
  bool f_hd = false, f_phd = false, f_whd = false, f_wid = false, machine = false;
  long sample = 0;
  uint64_t seed = 0;
  ms->add_flag("--hd", f_hd, "hardness");
  ms->add_flag("--phd", f_phd, "propagation hardness");
  ms->add_flag("--whd", f_whd, "asymmetric width");
  ms->add_flag("--wid", f_wid, "symmetric width");
  ms->add_option("--scope", scope, "all|orig|v1,v2,...")->capture_default_str();
  ms->add_option("--in,-i", in_path, "input DIMACS file (default stdin)");
  ms->add_option("--cap", caps.scope_vars, "scope sweep cap (|V|)");
  ms->add_option("--cap-dp", caps.dp_vars, "instantiation-table cap (n)");
  ms->add_option("--cap-width", caps.width_vars, "saturation cap (n)");
  ms->add_option("--sample", sample, "Monte-Carlo lower bound with N samples");
  ms->add_option("--seed", seed, "sampling seed")->capture_default_str();
  ms->add_flag("--machine", machine, "append a machine-readable record line");

  auto* g = app.add_subcommand("gen", "generate benchmark families");
  std::string family, graph_path;
  int gen_n = 0, gen_m = 0, gen_maxlen = 0;
  uint64_t gen_seed = 0;
  g->add_option("family", family, "tn|dipole|random|tseitin")->required();
  g->add_option("size", gen_n, "size parameter for tn/dipole");
  g->add_option("--n", gen_n, "number of variables (random)");
  g->add_option("--m", gen_m, "number of constraints (random)");
  g->add_option("--maxlen", gen_maxlen, "maximal constraint length (random)");
  g->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
  g->add_option("--graph", graph_path, "graph file for tseitin");
  g->add_option("--out,-o", out_path, "output file (default stdout)");

  auto* v = app.add_subcommand("verify", "check a CNF against its XNF source");
  std::string xnf_path, cnf_path;
  v->add_option("--xnf", xnf_path, "source XNF file")->required();
  v->add_option("--cnf", cnf_path, "candidate DIMACS file")->required();
  v->add_flag("--alt-xnf", alt_xnf, "alternative XNF sign convention");
  v->add_option("--sample", sample, "sampled verification with N random totals");
  v->add_option("--seed", seed, "sampling seed")->capture_default_str();
  v->add_option("--cap-enum", caps.enum_vars, "full-enumeration cap (n)");

  auto* cp = app.add_subcommand("check-proof", "validate a resolution refutation");
  std::string proof_path;
  bool lax = false, any_target = false;
  cp->add_option("--cnf", cnf_path, "axiom clause-set (DIMACS)")->required();
  cp->add_option("--proof", proof_path, "proof file")->required();
  cp->add_flag("--lax", lax, "axioms may be subsumed by the clause-set");
  cp->add_flag("--allow-any-target", any_target, "do not require the empty clause");

  auto* ca = app.add_subcommand("check-acyclic", "incidence-graph acyclicity of an XNF system");
  ca->add_option("--in,-i", in_path, "input XNF file (default stdin)");
  ca->add_flag("--alt-xnf", alt_xnf, "alternative XNF sign convention");

  CLI11_PARSE(app, argc, argv);

  try {
    if (t->parsed()) return cmd_translate(in_path, out_path, method, alt_xnf, prime_len, caps);
    if (ms->parsed()) {
      int picked = f_hd + f_phd + f_whd + f_wid;
      if (picked != 1) throw CmdError{kExitUsage, "pick exactly one of --hd --phd --whd --wid"};
      std::string kind = f_hd ? "hd" : f_phd ? "phd" : f_whd ? "whd" : "wid";
      return cmd_measure(in_path, kind, scope, sample, seed, machine, caps);
    }
    if (g->parsed()) return cmd_gen(family, gen_n, gen_m, gen_maxlen, gen_seed, graph_path, out_path);
    if (v->parsed()) return cmd_verify(xnf_path, cnf_path, alt_xnf, sample, seed, caps);
    if (cp->parsed()) return cmd_check_proof(cnf_path, proof_path, lax, any_target);
    if (ca->parsed()) return cmd_check_acyclic(in_path, alt_xnf);
  } catch (const CmdError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const xorcnf::CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    if (ms->parsed())
      std::cerr << "hint: --sample N gives a Monte-Carlo lower bound instead\n";
    return kExitCap;
  } catch (const xorcnf::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const xorcnf::UnsatSystemError& e) {
    std::cerr << "unsatisfiable input system; inconsistent subset (0-based):";
    for (size_t i : e.certificate) std::cerr << " " << i;
    std::cerr << "\n";
    return kExitSemantic;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
