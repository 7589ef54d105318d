#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "sop/errors.hpp"
#include "sop/term.hpp"

namespace sop {

/// One gate application; `args` are qubit indices.  For rz, `num` and
/// `denom_log` carry the angle pi * num / 2^denom_log.
struct Gate {
  std::string name;
  std::vector<std::size_t> args;
  std::int64_t num = 0;
  int denom_log = 0;

  bool operator==(const Gate& o) const = default;
};

struct Circuit {
  std::size_t qubits = 0;
  std::vector<Gate> gates;

  bool operator==(const Circuit& o) const = default;
};

namespace detail {

inline int gate_arity(const std::string& name) {
  if (name == "h" || name == "x" || name == "z" || name == "s" || name == "sdg" || name == "t" ||
      name == "tdg" || name == "rz")
    return 1;
  if (name == "cz" || name == "cnot" || name == "swap") return 2;
  if (name == "ccz" || name == "tof") return 3;
  return -1;
}

}  // namespace detail

/// Parses the circuit format:
///
///     qubits N
///     h 0
///     cnot 0 1
///     rz 1 2 0        # angle pi*1/2^2 on qubit 0
///
/// '#' starts a comment; blank lines are skipped.  Errors carry line/column.
inline Circuit parse_circuit(const std::string& text) {
  Circuit c;
  bool have_header = false;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    // Tokenize, remembering the column each token starts at.
    std::vector<std::pair<std::string, int>> toks;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      toks.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
      i = j;
    }
    if (toks.empty()) continue;

    auto number_at = [&](std::size_t k, std::int64_t lo, std::int64_t hi) -> std::int64_t {
      if (k >= toks.size()) throw SyntaxError("missing argument", lineno, static_cast<int>(line.size()) + 1);
      const auto& [tok, col] = toks[k];
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (...) {
        throw SyntaxError("expected a number, got '" + tok + "'", lineno, col);
      }
      if (used != tok.size()) throw SyntaxError("expected a number, got '" + tok + "'", lineno, col);
      if (v < lo || v > hi) throw SyntaxError("argument " + tok + " out of range", lineno, col);
      return v;
    };

    if (!have_header) {
      if (toks[0].first != "qubits")
        throw SyntaxError("expected 'qubits N' header", lineno, toks[0].second);
      c.qubits = static_cast<std::size_t>(number_at(1, 0, 1 << 20));
      if (toks.size() > 2) throw SyntaxError("trailing tokens after header", lineno, toks[2].second);
      have_header = true;
      continue;
    }

    Gate g;
    g.name = toks[0].first;
    int arity = detail::gate_arity(g.name);
    if (arity < 0) throw SyntaxError("unknown gate '" + g.name + "'", lineno, toks[0].second);
    std::size_t argbase = 1;
    if (g.name == "rz") {
      g.num = number_at(1, INT64_MIN, INT64_MAX);
      g.denom_log = static_cast<int>(number_at(2, 0, 60));
      argbase = 3;
    }
    for (int a = 0; a < arity; ++a) {
      std::int64_t q = number_at(argbase + a, 0, static_cast<std::int64_t>(c.qubits) - 1);
      g.args.push_back(static_cast<std::size_t>(q));
    }
    if (toks.size() > argbase + arity)
      throw SyntaxError("trailing tokens", lineno, toks[argbase + arity].second);
    for (std::size_t a = 0; a < g.args.size(); ++a)
      for (std::size_t b = a + 1; b < g.args.size(); ++b)
        if (g.args[a] == g.args[b])
          throw SyntaxError("gate '" + g.name + "' needs distinct qubits", lineno, toks[0].second);
    c.gates.push_back(std::move(g));
  }
  if (!have_header) throw SyntaxError("empty circuit: missing 'qubits N' header", 1, 1);
  return c;
}

inline std::string print_circuit(const Circuit& c) {
  std::string s = "qubits " + std::to_string(c.qubits) + "\n";
  for (const auto& g : c.gates) {
    s += g.name;
    if (g.name == "rz") s += " " + std::to_string(g.num) + " " + std::to_string(g.denom_log);
    for (std::size_t q : g.args) s += " " + std::to_string(q);
    s += "\n";
  }
  return s;
}

/// Builds the width-wide term for a single gate (identity on untouched
/// wires).  Gate phases are attached to the output-side variables.
inline SopTerm gate_term(const Gate& g, std::size_t width) {
  SopTerm t = term_identity(width);
  auto y = [](std::size_t q) { return static_cast<Var>(q); };
  const auto& a = g.args;
  if (g.name == "h") {
    Var z = static_cast<Var>(width);
    t.vars.push_back(z);
    t.phase.add_term(BoolMonomial({y(a[0]), z}), DyadicMod1(1, 1));
    t.outputs[a[0]] = BoolPoly::variable(z);
    t.halfpow = -1;
  } else if (g.name == "x") {
    t.outputs[a[0]] += BoolPoly::one();
  } else if (g.name == "z") {
    t.phase.add_term(BoolMonomial(y(a[0])), DyadicMod1(1, 1));
  } else if (g.name == "s") {
    t.phase.add_term(BoolMonomial(y(a[0])), DyadicMod1(1, 2));
  } else if (g.name == "sdg") {
    t.phase.add_term(BoolMonomial(y(a[0])), DyadicMod1(3, 2));
  } else if (g.name == "t") {
    t.phase.add_term(BoolMonomial(y(a[0])), DyadicMod1(1, 3));
  } else if (g.name == "tdg") {
    t.phase.add_term(BoolMonomial(y(a[0])), DyadicMod1(7, 3));
  } else if (g.name == "rz") {
    t.phase.add_term(BoolMonomial(y(a[0])), DyadicMod1(g.num, g.denom_log + 1));
  } else if (g.name == "cz") {
    t.phase.add_term(BoolMonomial({y(a[0]), y(a[1])}), DyadicMod1(1, 1));
  } else if (g.name == "ccz") {
    t.phase.add_term(BoolMonomial({y(a[0]), y(a[1]), y(a[2])}), DyadicMod1(1, 1));
  } else if (g.name == "cnot") {
    t.outputs[a[1]] += BoolPoly::variable(y(a[0]));
  } else if (g.name == "swap") {
    std::swap(t.outputs[a[0]], t.outputs[a[1]]);
  } else if (g.name == "tof") {
    t.outputs[a[2]] += BoolPoly(BoolMonomial({y(a[0]), y(a[1])}));
  } else {
    throw SyntaxError("unknown gate '" + g.name + "'");
  }
  return t;
}

/// Folds the circuit into one term, composing gate after gate onto the
/// identity.
inline SopTerm circuit_to_sop(const Circuit& c) {
  SopTerm acc = term_identity(c.qubits);
  for (const auto& g : c.gates) acc = compose(gate_term(g, c.qubits), acc);
  return acc;
}

}  // namespace sop
