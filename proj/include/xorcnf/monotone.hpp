#pragma once

#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "xorcnf/cnf.hpp"
#include "xorcnf/solver.hpp"

namespace xorcnf {

/// A DAG of binary and/or gates over constant nodes and doubled inputs.
/// Each original variable v owns two input wires: the "p" wire (v') is 0
/// exactly when v has been assigned 1, the "pp" wire (v'') is 0 exactly
/// when v has been assigned 0. Both wires 1 means v unassigned, both 0
/// is the contradictory input.
struct MonotoneCircuit {
  enum class Kind { INPUT, CONST, AND, OR };
  struct Node {
    Kind kind = Kind::CONST;
    int a = -1, b = -1;
    Var input_var = 0;
    bool input_primed = false;  // true: the v' wire, false: the v'' wire
    bool const_val = false;
  };
  std::vector<Node> nodes;
  int output = -1;

  size_t size() const { return nodes.size(); }

  /// Children must precede parents and the output must exist; gates are
  /// binary ands/ors only (monotone by construction).
  void validate() const {
    if (output < 0 || output >= static_cast<int>(nodes.size()))
      throw std::invalid_argument("circuit output out of range");
    for (size_t i = 0; i < nodes.size(); ++i) {
      const Node& n = nodes[i];
      if (n.kind == Kind::AND || n.kind == Kind::OR) {
        if (n.a < 0 || n.b < 0 || n.a >= static_cast<int>(i) ||
            n.b >= static_cast<int>(i))
          throw std::invalid_argument("gate child must precede the gate");
      } else if (n.kind == Kind::INPUT && n.input_var <= 0) {
        throw std::invalid_argument("input node without a variable");
      }
    }
  }
};

/// Values of the doubled inputs, one (p, pp) pair per original variable.
struct DoubledInput {
  std::map<Var, std::pair<bool, bool>> pairs;  // var -> (v', v'')

  static DoubledInput all_unassigned(const std::vector<Var>& vars) {
    DoubledInput d;
    for (Var v : vars) d.pairs[v] = {true, true};
    return d;
  }

  /// Encoding of a partial assignment over the given variables.
  static DoubledInput encode(const PartialAssignment& phi,
                             const std::vector<Var>& vars) {
    DoubledInput d = all_unassigned(vars);
    for (Var v : vars) {
      auto b = phi.value_of_var(v);
      if (b) d.pairs[v] = *b ? std::make_pair(false, true)
                             : std::make_pair(true, false);
    }
    return d;
  }

  bool contradictory() const {
    for (auto& [v, p] : pairs)
      if (!p.first && !p.second) return true;
    return false;
  }

  /// The encoded partial assignment; meaningless if contradictory().
  PartialAssignment decode() const {
    PartialAssignment phi;
    for (auto& [v, p] : pairs) {
      if (p.first && !p.second) phi.bind(v, false);
      if (!p.first && p.second) phi.bind(v, true);
    }
    return phi;
  }
};

/// Topological evaluation; throws on an unbound input wire.
inline bool eval_circuit(const MonotoneCircuit& c, const DoubledInput& in) {
  c.validate();
  std::vector<char> val(c.nodes.size(), 0);
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    switch (n.kind) {
      case MonotoneCircuit::Kind::CONST:
        val[i] = n.const_val;
        break;
      case MonotoneCircuit::Kind::INPUT: {
        auto it = in.pairs.find(n.input_var);
        if (it == in.pairs.end())
          throw std::invalid_argument("unbound input wire for variable " +
                                      std::to_string(n.input_var));
        val[i] = n.input_primed ? it->second.first : it->second.second;
        break;
      }
      case MonotoneCircuit::Kind::AND:
        val[i] = val[n.a] && val[n.b];
        break;
      case MonotoneCircuit::Kind::OR:
        val[i] = val[n.a] || val[n.b];
        break;
    }
  }
  return val[c.output];
}

/// Builder with constant folding and structural sharing of repeated gates.
class CircuitBuilder {
 public:
  int constant(bool b) {
    int& slot = const_[b];
    if (slot < 0) {
      MonotoneCircuit::Node n;
      n.kind = MonotoneCircuit::Kind::CONST;
      n.const_val = b;
      slot = push(n);
    }
    return slot;
  }

  int input(Var v, bool primed) {
    auto key = std::make_pair(v, primed);
    auto it = inputs_.find(key);
    if (it != inputs_.end()) return it->second;
    MonotoneCircuit::Node n;
    n.kind = MonotoneCircuit::Kind::INPUT;
    n.input_var = v;
    n.input_primed = primed;
    int idx = push(n);
    inputs_[key] = idx;
    return idx;
  }

  int mk_and(int a, int b) { return mk_gate(MonotoneCircuit::Kind::AND, a, b); }
  int mk_or(int a, int b) { return mk_gate(MonotoneCircuit::Kind::OR, a, b); }

  /// Right-associated conjunction; empty input gives constant 1.
  int and_all(const std::vector<int>& xs) {
    if (xs.empty()) return constant(true);
    int acc = xs.back();
    for (size_t i = xs.size() - 1; i-- > 0;) acc = mk_and(xs[i], acc);
    return acc;
  }

  /// Right-associated disjunction; empty input gives constant 0.
  int or_all(const std::vector<int>& xs) {
    if (xs.empty()) return constant(false);
    int acc = xs.back();
    for (size_t i = xs.size() - 1; i-- > 0;) acc = mk_or(xs[i], acc);
    return acc;
  }

  MonotoneCircuit finish(int output) {
    circuit_.output = output;
    circuit_.validate();
    return circuit_;
  }

 private:
  int push(const MonotoneCircuit::Node& n) {
    circuit_.nodes.push_back(n);
    return static_cast<int>(circuit_.nodes.size()) - 1;
  }

  bool is_const(int idx, bool b) const {
    const auto& n = circuit_.nodes[idx];
    return n.kind == MonotoneCircuit::Kind::CONST && n.const_val == b;
  }

  int mk_gate(MonotoneCircuit::Kind kind, int a, int b) {
    const bool is_and = kind == MonotoneCircuit::Kind::AND;
    const bool annihilator = !is_and;  // AND dies on 0, OR on 1
    if (is_const(a, annihilator) || is_const(b, annihilator))
      return constant(annihilator);
    if (is_const(a, !annihilator)) return b;
    if (is_const(b, !annihilator)) return a;
    if (a == b) return a;
    if (a > b) std::swap(a, b);
    auto key = std::make_tuple(static_cast<int>(kind), a, b);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    MonotoneCircuit::Node n;
    n.kind = kind;
    n.a = a;
    n.b = b;
    int idx = push(n);
    memo_[key] = idx;
    return idx;
  }

  MonotoneCircuit circuit_;
  std::map<std::pair<Var, bool>, int> inputs_;
  std::map<std::tuple<int, int, int>, int> memo_;
  int const_[2] = {-1, -1};
};

/// Semantic monotonisation of the boolean function given by F as a CNF
/// over orig_vars: 0 iff some pair is contradictory or the encoded partial
/// assignment has no satisfying total extension. This is the oracle the
/// circuit constructions are checked against.
inline bool monotonise_eval(const ClauseSet& F, const std::vector<Var>& orig_vars,
                            const DoubledInput& in) {
  if (in.contradictory()) return false;
  PartialAssignment phi = in.decode();
  (void)orig_vars;
  return satisfiable(apply(phi, F));
}

/// Table-based variant: `table` holds the function values with bit j of
/// the index giving the value of orig_vars[j].
inline bool monotonise_eval(const std::vector<bool>& table,
                            const std::vector<Var>& orig_vars,
                            const DoubledInput& in) {
  if (in.contradictory()) return false;
  PartialAssignment phi = in.decode();
  const size_t n = orig_vars.size();
  for (size_t a = 0; a < (size_t{1} << n); ++a) {
    if (!table[a]) continue;
    bool extends = true;
    for (size_t j = 0; j < n && extends; ++j) {
      auto b = phi.value_of_var(orig_vars[j]);
      if (b && *b != static_cast<bool>((a >> j) & 1)) extends = false;
    }
    if (extends) return true;
  }
  return false;
}

/// Layered translation of a representation F (over orig_vars plus
/// auxiliaries) of relative hardness at most 1 into a monotone circuit for
/// the monotonisation: wires (v', v'') per variable and layer simulate the
/// stages of unit propagation, auxiliary variables start at constant 1,
/// and the output checks that no pair of wires reached (0, 0). Node count
/// is O(n(F)^2 * l(F)). The construction is total; the semantic guarantee
/// holds under the stated hardness precondition.
inline MonotoneCircuit circuit_from_representation(const ClauseSet& F,
                                                   std::vector<Var> orig_vars) {
  std::sort(orig_vars.begin(), orig_vars.end());
  orig_vars.erase(std::unique(orig_vars.begin(), orig_vars.end()),
                  orig_vars.end());
  CircuitBuilder builder;
  if (F.has_empty_clause()) return builder.finish(builder.constant(false));
  if (F.is_top()) {
    // The monotonisation of the constant-1 function is not constant: it is
    // 0 exactly on the contradictory input pairs.
    std::vector<int> outs;
    for (Var v : orig_vars)
      outs.push_back(builder.mk_or(builder.input(v, true), builder.input(v, false)));
    return builder.finish(builder.and_all(outs));
  }

  std::vector<Var> wires = F.variables();
  for (Var v : orig_vars) wires.push_back(v);
  std::sort(wires.begin(), wires.end());
  wires.erase(std::unique(wires.begin(), wires.end()), wires.end());
  const size_t N = wires.size();
  std::map<Var, size_t> wire_pos;
  for (size_t i = 0; i < N; ++i) wire_pos[wires[i]] = i;
  auto is_orig = [&](Var v) {
    return std::binary_search(orig_vars.begin(), orig_vars.end(), v);
  };

  // prime[i] / second[i] hold the current layer's wires of variable i.
  std::vector<int> prime(N), second(N);
  for (size_t i = 0; i < N; ++i) {
    if (is_orig(wires[i])) {
      prime[i] = builder.input(wires[i], true);
      second[i] = builder.input(wires[i], false);
    } else {
      prime[i] = builder.constant(true);
      second[i] = builder.constant(true);
    }
  }

  auto wire_of_literal = [&](Lit x, const std::vector<int>& pr,
                             const std::vector<int>& sec) {
    size_t i = wire_pos.at(var_of(x));
    return is_positive(x) ? sec[i] : pr[i];
  };

  for (size_t layer = 0; layer < N; ++layer) {
    std::vector<int> next_prime(N), next_second(N);
    for (size_t i = 0; i < N; ++i) {
      Var v = wires[i];
      std::vector<int> conj_p{prime[i]}, conj_s{second[i]};
      for (const Clause& c : F) {
        bool has_pos = c.contains(static_cast<Lit>(v));
        bool has_neg = c.contains(-static_cast<Lit>(v));
        if (!has_pos && !has_neg) continue;
        std::vector<int> dis;
        for (Lit x : c) {
          if (var_of(x) == v) continue;
          dis.push_back(wire_of_literal(x, prime, second));
        }
        int term = builder.or_all(dis);
        if (has_pos) conj_p.push_back(term);
        if (has_neg) conj_s.push_back(term);
      }
      next_prime[i] = builder.and_all(conj_p);
      next_second[i] = builder.and_all(conj_s);
    }
    prime = std::move(next_prime);
    second = std::move(next_second);
  }

  std::vector<int> outs;
  for (size_t i = 0; i < N; ++i) outs.push_back(builder.mk_or(prime[i], second[i]));
  return builder.finish(builder.and_all(outs));
}

struct CircuitRepresentation {
  ClauseSet cnf;
  std::vector<Var> orig_vars;
  std::vector<Var> gate_vars;
  Var output_var = 0;
};

/// Gate translation of a monotone circuit for the monotonisation back into
/// a CNF-representation of the underlying function: maximal same-operator
/// subtrees are translated as one wide gate, input wires rename to
/// literals over the original variables (v' to -v, v'' to v), clauses with
/// clashing literals are dropped, and the unit clause on the output gate
/// variable is added. The reduced form keeps only the gate-implies-inputs
/// direction (one negative literal per clause before renaming); the full
/// form adds the converse clauses. Either way the result has relative
/// hardness at most 1 when the circuit computes a monotonisation.
inline CircuitRepresentation representation_from_circuit(
    const MonotoneCircuit& circuit, std::vector<Var> orig_vars,
    bool full_equivalences = false) {
  circuit.validate();
  std::sort(orig_vars.begin(), orig_vars.end());
  orig_vars.erase(std::unique(orig_vars.begin(), orig_vars.end()),
                  orig_vars.end());
  CircuitRepresentation rep;
  rep.orig_vars = orig_vars;

  using Kind = MonotoneCircuit::Kind;
  const auto& nodes = circuit.nodes;

  // Constant folding: fold[i] is 0/1 for constant nodes, -1 otherwise;
  // gates with one constant child alias to the other child.
  std::vector<int> fold(nodes.size(), -1);
  std::vector<int> alias(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) alias[i] = static_cast<int>(i);
  auto res = [&](int i) {
    while (alias[i] != i) i = alias[i];
    return i;
  };
  for (size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.kind == Kind::CONST) {
      fold[i] = n.const_val;
      continue;
    }
    if (n.kind != Kind::AND && n.kind != Kind::OR) continue;
    int a = res(n.a), b = res(n.b);
    int fa = fold[a], fb = fold[b];
    int ann = n.kind == Kind::AND ? 0 : 1;
    if (fa == ann || fb == ann)
      fold[i] = ann;
    else if (fa == 1 - ann && fb == 1 - ann)
      fold[i] = 1 - ann;
    else if (fa == 1 - ann || a == b)
      alias[i] = b;
    else if (fb == 1 - ann)
      alias[i] = a;
  }

  int out = res(circuit.output);
  if (fold[out] == 1) return rep;  // satisfied by everything: top
  if (fold[out] == 0) {
    rep.cnf = ClauseSet::contradiction();
    return rep;
  }

  // Rename input wires to literals over the original variables.
  auto input_literal = [&](const MonotoneCircuit::Node& n) -> Lit {
    return n.input_primed ? -n.input_var : n.input_var;
  };

  // Walk the cone of the output. A gate is materialized iff it is the
  // output or feeds a gate of the other operator; same-operator edges
  // flatten into the parent's literal list.
  std::vector<bool> reached(nodes.size(), false);
  std::vector<bool> materialized(nodes.size(), false);
  std::function<void(int)> walk = [&](int idx) {
    if (reached[idx]) return;
    reached[idx] = true;
    const auto& n = nodes[idx];
    if (n.kind != Kind::AND && n.kind != Kind::OR) return;
    for (int raw : {n.a, n.b}) {
      int child = res(raw);
      const auto& cn = nodes[child];
      if ((cn.kind == Kind::AND || cn.kind == Kind::OR) && cn.kind != n.kind)
        materialized[child] = true;
      walk(child);
    }
  };
  if (nodes[out].kind == Kind::AND || nodes[out].kind == Kind::OR)
    materialized[out] = true;
  walk(out);

  Var next = orig_vars.empty() ? 1 : orig_vars.back() + 1;
  for (size_t i = 0; i < nodes.size(); ++i) {
    const auto& n = nodes[i];
    if (n.kind == Kind::INPUT) next = std::max(next, n.input_var + 1);
  }
  std::map<int, Var> gate_var;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!materialized[i] || !reached[i]) continue;
    gate_var[static_cast<int>(i)] = next;
    rep.gate_vars.push_back(next);
    ++next;
  }

  // Flattened child literals of a materialized gate: same-op descendants
  // inline, inputs rename, materialized children contribute their gate var.
  std::function<void(int, Kind, std::vector<Lit>&)> flatten =
      [&](int idx, Kind op, std::vector<Lit>& acc) {
        idx = res(idx);
        const auto& n = nodes[idx];
        if (n.kind == Kind::INPUT) {
          acc.push_back(input_literal(n));
          return;
        }
        if (materialized[idx]) {
          acc.push_back(gate_var.at(idx));
          return;
        }
        flatten(n.a, op, acc);
        flatten(n.b, op, acc);
      };

  std::vector<Clause> clauses;
  auto push_clause = [&](std::vector<Lit> lits) {
    try {
      clauses.push_back(Clause(std::move(lits)));
    } catch (const std::invalid_argument&) {
      // clashing literals after renaming: pseudo-clause, dropped
    }
  };

  for (auto& [idx, w] : gate_var) {
    const auto& n = nodes[idx];
    std::vector<Lit> kids;
    flatten(n.a, n.kind, kids);
    flatten(n.b, n.kind, kids);
    if (n.kind == Kind::OR) {
      std::vector<Lit> lits{-static_cast<Lit>(w)};
      lits.insert(lits.end(), kids.begin(), kids.end());
      push_clause(std::move(lits));
      if (full_equivalences)
        for (Lit k : kids) push_clause({static_cast<Lit>(w), -k});
    } else {
      for (Lit k : kids) push_clause({-static_cast<Lit>(w), k});
      if (full_equivalences) {
        std::vector<Lit> lits{static_cast<Lit>(w)};
        for (Lit k : kids) lits.push_back(-k);
        push_clause(std::move(lits));
      }
    }
  }

  if (nodes[out].kind == Kind::INPUT) {
    push_clause({input_literal(nodes[out])});
  } else {
    rep.output_var = gate_var.at(out);
    push_clause({static_cast<Lit>(rep.output_var)});
  }
  rep.cnf = ClauseSet(std::move(clauses));
  return rep;
}

// ---------------------------------------------------------------------------
// Circuit text format: one node per line, "<id> INPUT <name>" with names
// like "3p" (the v' wire of variable 3) and "3pp" (the v'' wire),
// "<id> CONST <0|1>", "<id> AND <a> <b>", "<id> OR <a> <b>", and a final
// "OUTPUT <id>" line. Ids are 1-based and consecutive.
// ---------------------------------------------------------------------------

inline void write_circuit(std::ostream& out, const MonotoneCircuit& c) {
  using Kind = MonotoneCircuit::Kind;
  for (size_t i = 0; i < c.nodes.size(); ++i) {
    const auto& n = c.nodes[i];
    out << (i + 1) << " ";
    switch (n.kind) {
      case Kind::INPUT:
        out << "INPUT " << n.input_var << (n.input_primed ? "p" : "pp");
        break;
      case Kind::CONST:
        out << "CONST " << (n.const_val ? 1 : 0);
        break;
      case Kind::AND:
        out << "AND " << (n.a + 1) << " " << (n.b + 1);
        break;
      case Kind::OR:
        out << "OR " << (n.a + 1) << " " << (n.b + 1);
        break;
    }
    out << "\n";
  }
  out << "OUTPUT " << (c.output + 1) << "\n";
}

inline MonotoneCircuit read_circuit(std::istream& in) {
  using Kind = MonotoneCircuit::Kind;
  MonotoneCircuit c;
  std::string line;
  size_t lineno = 0;
  bool have_output = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok == "c") continue;
    if (tok == "OUTPUT") {
      long id;
      if (!(ls >> id) || id < 1 || id > static_cast<long>(c.nodes.size()))
        throw ParseError("line " + std::to_string(lineno) + ": bad OUTPUT id");
      c.output = static_cast<int>(id - 1);
      have_output = true;
      continue;
    }
    long id;
    try {
      id = std::stol(tok);
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) + ": bad node id");
    }
    if (id != static_cast<long>(c.nodes.size()) + 1)
      throw ParseError("line " + std::to_string(lineno) +
                       ": node ids must be consecutive from 1");
    std::string kind;
    if (!(ls >> kind))
      throw ParseError("line " + std::to_string(lineno) + ": missing node kind");
    MonotoneCircuit::Node n;
    if (kind == "INPUT") {
      std::string name;
      if (!(ls >> name)) throw ParseError("line " + std::to_string(lineno) + ": missing input name");
      size_t p = name.find_first_not_of("0123456789");
      if (p == 0 || p == std::string::npos ||
          (name.substr(p) != "p" && name.substr(p) != "pp"))
        throw ParseError("line " + std::to_string(lineno) + ": input name must be <var>p or <var>pp");
      n.kind = Kind::INPUT;
      n.input_var = static_cast<Var>(std::stol(name.substr(0, p)));
      n.input_primed = name.substr(p) == "p";
    } else if (kind == "CONST") {
      long b;
      if (!(ls >> b) || (b != 0 && b != 1))
        throw ParseError("line " + std::to_string(lineno) + ": CONST needs 0 or 1");
      n.kind = Kind::CONST;
      n.const_val = b == 1;
    } else if (kind == "AND" || kind == "OR") {
      long a, b;
      if (!(ls >> a >> b) || a < 1 || b < 1 || a >= id || b >= id)
        throw ParseError("line " + std::to_string(lineno) + ": bad gate children");
      n.kind = kind == "AND" ? Kind::AND : Kind::OR;
      n.a = static_cast<int>(a - 1);
      n.b = static_cast<int>(b - 1);
    } else {
      throw ParseError("line " + std::to_string(lineno) + ": unknown node kind '" + kind + "'");
    }
    c.nodes.push_back(n);
  }
  if (!have_output) throw ParseError("circuit file missing OUTPUT line");
  c.validate();
  return c;
}

}  // namespace xorcnf
