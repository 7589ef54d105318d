#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sop/boolpoly.hpp"
#include "sop/errors.hpp"
#include "sop/matrix.hpp"
#include "sop/phasepoly.hpp"

namespace sop {

/// A sum-over-paths term
///
///     2^(halfpow/2) * sum over y in {0,1}^vars of
///         e^(2*i*pi*phase(y)) |outputs(y)><inputs(y)|
///
/// denoting a linear map from in_arity() to out_arity() qubits.  All path
/// variables are bound by the sum; outputs/inputs are XOR-polynomials in them.
class SopTerm {
 public:
  int halfpow = 0;                // scalar exponent: the prefactor is 2^(halfpow/2)
  std::vector<Var> vars;          // bound path variables, sorted ascending
  PhasePoly phase;                // multilinear, dyadic-mod-1 coefficients
  std::vector<BoolPoly> outputs;  // one XOR-polynomial per output qubit
  std::vector<BoolPoly> inputs;   // one XOR-polynomial per input qubit

  std::size_t out_arity() const { return outputs.size(); }
  std::size_t in_arity() const { return inputs.size(); }

  bool binds(Var v) const { return std::binary_search(vars.begin(), vars.end(), v); }

  /// Checks the representation invariants; throws on violation.
  void validate() const {
    for (std::size_t i = 1; i < vars.size(); ++i)
      if (vars[i - 1] >= vars[i]) throw UnboundVariableError("variable list must be sorted and duplicate-free");
    auto check = [&](Var v) {
      if (!binds(v)) throw UnboundVariableError("unbound variable y" + std::to_string(v));
    };
    for (Var v : phase.vars()) check(v);
    for (const auto& p : outputs)
      for (Var v : p.vars()) check(v);
    for (const auto& p : inputs)
      for (Var v : p.vars()) check(v);
  }

  bool operator==(const SopTerm& o) const = default;

  std::string str() const {
    std::string s = "2^(" + std::to_string(halfpow) + "/2) * sum{";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + ("y" + std::to_string(vars[i]));
    s += "} e^(2*i*pi*(" + phase.str() + ")) |";
    for (std::size_t i = 0; i < outputs.size(); ++i) s += (i ? ", " : "") + outputs[i].str();
    s += "><";
    for (std::size_t i = 0; i < inputs.size(); ++i) s += (i ? ", " : "") + inputs[i].str();
    return s + "|";
  }
};

/// Builds a term and validates it.
inline SopTerm make_term(int halfpow, std::vector<Var> vars, PhasePoly phase, std::vector<BoolPoly> outputs,
                         std::vector<BoolPoly> inputs) {
  SopTerm t;
  t.halfpow = halfpow;
  t.vars = std::move(vars);
  std::sort(t.vars.begin(), t.vars.end());
  t.phase = std::move(phase);
  t.outputs = std::move(outputs);
  t.inputs = std::move(inputs);
  t.validate();
  return t;
}

/// Relabels bound variables canonically: first occurrence while scanning
/// outputs, then inputs, then the phase (monomials in graded-lex order),
/// then any leftover variables in ascending original order.  Two terms with
/// equal canonical forms are alpha-equivalent; the converse can fail for
/// terms with nontrivial variable symmetries, which is why equality checks
/// back off to evaluation when canonical forms differ.
inline SopTerm canonicalize(const SopTerm& t) {
  std::unordered_map<Var, Var> map;
  map.reserve(t.vars.size());
  Var next = 0;
  auto see = [&](Var v) {
    if (map.emplace(v, next).second) ++next;
  };
  for (const auto& p : t.outputs)
    for (const auto& m : p.monomials())
      for (Var v : m.vars()) see(v);
  for (const auto& p : t.inputs)
    for (const auto& m : p.monomials())
      for (Var v : m.vars()) see(v);
  for (const auto& [m, c] : t.phase.terms())
    for (Var v : m.vars()) see(v);
  for (Var v : t.vars) see(v);

  auto f = [&](Var v) { return map.at(v); };
  SopTerm r;
  r.halfpow = t.halfpow;
  r.vars.resize(t.vars.size());
  for (Var v = 0; v < next; ++v) r.vars[v] = v;
  r.phase = t.phase.rename(f);
  r.outputs.reserve(t.outputs.size());
  for (const auto& p : t.outputs) r.outputs.push_back(p.rename(f));
  r.inputs.reserve(t.inputs.size());
  for (const auto& p : t.inputs) r.inputs.push_back(p.rename(f));
  return r;
}

/// The identity on n qubits.
inline SopTerm term_identity(std::size_t n) {
  SopTerm t;
  for (std::size_t i = 0; i < n; ++i) {
    t.vars.push_back(static_cast<Var>(i));
    t.outputs.push_back(BoolPoly::variable(static_cast<Var>(i)));
    t.inputs.push_back(BoolPoly::variable(static_cast<Var>(i)));
  }
  return t;
}

/// Wire crossing on two qubits.
inline SopTerm term_swap() {
  SopTerm t = term_identity(2);
  std::swap(t.outputs[0], t.outputs[1]);
  return t;
}

/// The Bell state sum{y} |y,y><|  (no inputs, two outputs).
inline SopTerm term_cup() {
  SopTerm t;
  t.vars = {0};
  t.outputs = {BoolPoly::variable(0), BoolPoly::variable(0)};
  return t;
}

/// The Bell effect sum{y} |><y,y|  (two inputs, no outputs).
inline SopTerm term_cap() {
  SopTerm t;
  t.vars = {0};
  t.inputs = {BoolPoly::variable(0), BoolPoly::variable(0)};
  return t;
}

/// Hadamard: 2^(-1/2) sum{y0,y1} e^(2*i*pi*y0*y1/2) |y1><y0|.
inline SopTerm term_hadamard() {
  SopTerm t;
  t.halfpow = -1;
  t.vars = {0, 1};
  t.phase = PhasePoly::term(BoolMonomial({0, 1}), DyadicMod1(1, 1));
  t.outputs = {BoolPoly::variable(1)};
  t.inputs = {BoolPoly::variable(0)};
  return t;
}

/// The canonical zero map of a given arity:
/// sum{y0} e^(2*i*pi*y0/2) |0...0><0...0|  (the two branches cancel).
inline SopTerm term_zero(std::size_t out_arity, std::size_t in_arity) {
  SopTerm t;
  t.vars = {0};
  t.phase = PhasePoly::term(BoolMonomial(Var(0)), DyadicMod1(1, 1));
  t.outputs.assign(out_arity, BoolPoly::zero());
  t.inputs.assign(in_arity, BoolPoly::zero());
  return t;
}

/// True if t is exactly the canonical zero form above (any arity).
inline bool is_zero_form(const SopTerm& t) {
  if (t.halfpow != 0 || t.vars.size() != 1) return false;
  if (!(t.phase == PhasePoly::term(BoolMonomial(t.vars[0]), DyadicMod1(1, 1)))) return false;
  for (const auto& p : t.outputs)
    if (!p.is_zero()) return false;
  for (const auto& p : t.inputs)
    if (!p.is_zero()) return false;
  return true;
}

namespace detail {

/// Renames every bound variable of t through f (must be injective on vars).
template <typename Fn>
SopTerm rename_term(const SopTerm& t, Fn&& f) {
  SopTerm r;
  r.halfpow = t.halfpow;
  r.vars.reserve(t.vars.size());
  for (Var v : t.vars) r.vars.push_back(f(v));
  std::sort(r.vars.begin(), r.vars.end());
  r.phase = t.phase.rename(f);
  for (const auto& p : t.outputs) r.outputs.push_back(p.rename(f));
  for (const auto& p : t.inputs) r.inputs.push_back(p.rename(f));
  return r;
}

inline std::unordered_map<Var, Var> offset_map(const std::vector<Var>& vars, Var base) {
  std::unordered_map<Var, Var> m;
  m.reserve(vars.size());
  Var next = base;
  for (Var v : vars) m.emplace(v, next++);
  return m;
}

}  // namespace detail

/// Sequential composition f after g (the codomain of g feeds the domain of f).
///
/// Bound variables are refreshed (g's first, then f's), one glue variable is
/// introduced per middle wire, and matching the boundary polynomials costs a
/// (-1)^(glue * (out xor in)) interference phase and a 2^(-m) normalisation.
inline SopTerm compose(const SopTerm& f, const SopTerm& g) {
  if (f.in_arity() != g.out_arity())
    throw ArityMismatchError("compose: arity mismatch (" + std::to_string(f.in_arity()) +
                             " inputs vs " + std::to_string(g.out_arity()) + " outputs)");
  std::size_t m = f.in_arity();
  auto gmap = detail::offset_map(g.vars, 0);
  auto fmap = detail::offset_map(f.vars, static_cast<Var>(g.vars.size()));
  SopTerm gr = detail::rename_term(g, [&](Var v) { return gmap.at(v); });
  SopTerm fr = detail::rename_term(f, [&](Var v) { return fmap.at(v); });
  Var glue0 = static_cast<Var>(g.vars.size() + f.vars.size());

  SopTerm r;
  r.halfpow = fr.halfpow + gr.halfpow - 2 * static_cast<int>(m);
  r.vars = gr.vars;
  r.vars.insert(r.vars.end(), fr.vars.begin(), fr.vars.end());
  r.phase = gr.phase + fr.phase;
  for (std::size_t i = 0; i < m; ++i) {
    Var glue = glue0 + static_cast<Var>(i);
    r.vars.push_back(glue);
    BoolPoly mismatch = gr.outputs[i] + fr.inputs[i];
    if (!mismatch.is_zero())
      r.phase += phase_scale_reduce(1, 1, hat_lift(mismatch) * IntPoly(BoolMonomial(glue)));
  }
  r.outputs = fr.outputs;
  r.inputs = gr.inputs;
  return canonicalize(r);
}

/// Parallel composition f (tensor) g, with f on the first wires.
inline SopTerm tensor(const SopTerm& f, const SopTerm& g) {
  auto fmap = detail::offset_map(f.vars, 0);
  auto gmap = detail::offset_map(g.vars, static_cast<Var>(f.vars.size()));
  SopTerm fr = detail::rename_term(f, [&](Var v) { return fmap.at(v); });
  SopTerm gr = detail::rename_term(g, [&](Var v) { return gmap.at(v); });
  SopTerm r;
  r.halfpow = fr.halfpow + gr.halfpow;
  r.vars = fr.vars;
  r.vars.insert(r.vars.end(), gr.vars.begin(), gr.vars.end());
  r.phase = fr.phase + gr.phase;
  r.outputs = fr.outputs;
  r.outputs.insert(r.outputs.end(), gr.outputs.begin(), gr.outputs.end());
  r.inputs = fr.inputs;
  r.inputs.insert(r.inputs.end(), gr.inputs.begin(), gr.inputs.end());
  return canonicalize(r);
}

/// Adjoint: swap inputs and outputs and negate the phase.
inline SopTerm dagger(const SopTerm& t) {
  SopTerm r;
  r.halfpow = t.halfpow;
  r.vars = t.vars;
  r.phase = -t.phase;
  r.outputs = t.inputs;
  r.inputs = t.outputs;
  return canonicalize(r);
}

/// Smallest cyclotomic level whose ring contains every amplitude of t:
/// phase denominators 2^n need level n-1, and an odd scalar exponent brings
/// in a sqrt(2), which needs level 2.
inline int fragment_of(const SopTerm& t) {
  int K = std::max(0, t.phase.max_denom_log() - 1);
  if (t.halfpow % 2 != 0) K = std::max(K, 2);
  return K;
}

/// Default cap on the number of path variables interp will enumerate.
inline constexpr std::size_t kInterpVarCap = 22;

/// Evaluates the term to its exact matrix by brute-force path enumeration.
/// The row (column) index packs the output (input) bits with qubit 1 as the
/// most significant bit.  Level is chosen automatically unless given.
inline SopMatrix interp(const SopTerm& t, std::optional<int> level_opt = std::nullopt,
                        std::size_t var_cap = kInterpVarCap) {
  t.validate();
  std::size_t k = t.vars.size();
  if (k > var_cap)
    throw TooManyVariablesError("term has " + std::to_string(k) + " path variables (cap " +
                                std::to_string(var_cap) + ")");
  int level = std::max(fragment_of(t), 1);
  if (level_opt) {
    if (*level_opt < level)
      throw LevelTooSmallError("term needs level >= " + std::to_string(level));
    level = *level_opt;
  }
  std::size_t m = t.out_arity(), n = t.in_arity();
  SopMatrix acc(std::size_t(1) << m, std::size_t(1) << n, level);
  std::unordered_map<Var, std::size_t> pos;
  pos.reserve(k);
  for (std::size_t i = 0; i < k; ++i) pos.emplace(t.vars[i], i);
  for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
    auto value_of = [&](Var v) { return (mask >> pos.at(v)) & 1; };
    std::size_t row = 0, col = 0;
    for (std::size_t i = 0; i < m; ++i) row = (row << 1) | (t.outputs[i].eval(value_of) ? 1 : 0);
    for (std::size_t i = 0; i < n; ++i) col = (col << 1) | (t.inputs[i].eval(value_of) ? 1 : 0);
    acc.at(row, col) += CycloNumber::from_phase(level, t.phase.eval(value_of));
  }
  return acc.scaled(CycloNumber::pow2_half(level, t.halfpow));
}

/// True if t is literally the identity term (canonical up to renaming).
inline bool is_identity_form(const SopTerm& t) {
  return canonicalize(t) == term_identity(t.out_arity()) && t.out_arity() == t.in_arity();
}

/// If t is an identity term up to a constant global phase, returns that
/// phase; otherwise nullopt.  The strict identity returns 0.
inline std::optional<DyadicMod1> identity_global_phase(const SopTerm& t) {
  if (t.out_arity() != t.in_arity()) return std::nullopt;
  SopTerm c = canonicalize(t);
  DyadicMod1 g = c.phase.constant_part();
  c.phase += PhasePoly::constant(-g);
  if (c == term_identity(c.out_arity())) return g;
  return std::nullopt;
}

}  // namespace sop
