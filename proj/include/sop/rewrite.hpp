#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sop/term.hpp"

namespace sop {

/// The rewrite rules.  The first seven act on the phase polynomial and bound
/// variables; ket/bra re-shear boundary polynomials toward bare variables.
enum class RuleKind { Zero, Elim, HH, HHGen, HHNl, Omega, Sqrt2, Ket, Bra };

inline const char* rule_name(RuleKind k) {
  switch (k) {
    case RuleKind::Zero: return "zero";
    case RuleKind::Elim: return "elim";
    case RuleKind::HH: return "hh";
    case RuleKind::HHGen: return "hhgen";
    case RuleKind::HHNl: return "hhnl";
    case RuleKind::Omega: return "omega";
    case RuleKind::Sqrt2: return "sqrt2";
    case RuleKind::Ket: return "ket";
    case RuleKind::Bra: return "bra";
  }
  return "?";
}

inline std::optional<RuleKind> rule_from_name(std::string_view s) {
  for (RuleKind k : {RuleKind::Zero, RuleKind::Elim, RuleKind::HH, RuleKind::HHGen, RuleKind::HHNl,
                     RuleKind::Omega, RuleKind::Sqrt2, RuleKind::Ket, RuleKind::Bra})
    if (s == rule_name(k)) return k;
  return std::nullopt;
}

/// One recorded rewrite: which rule fired where, any substitution it
/// performed, and how the scalar exponent moved.
struct RewriteStep {
  RuleKind rule;
  std::vector<Var> pivots;
  std::optional<std::size_t> index;  // boundary position, for ket/bra
  std::optional<std::pair<Var, BoolPoly>> subst;
  int halfpow_delta = 0;

  bool operator==(const RewriteStep& o) const = default;
};

/// Result of one successful rule application.
struct RuleApp {
  SopTerm term;
  RewriteStep step;
};

/// True if v appears in no output and no input polynomial.
inline bool is_internal(const SopTerm& t, Var v) {
  for (const auto& p : t.outputs)
    if (p.contains_var(v)) return false;
  for (const auto& p : t.inputs)
    if (p.contains_var(v)) return false;
  return true;
}

/// If every phase monomial containing y0 has coefficient exactly 1/2,
/// returns the XOR-polynomial B with  phase = (1/2) y0 B + rest; the
/// cofactor must be nonempty.
inline std::optional<BoolPoly> half_cofactor(const SopTerm& t, Var y0) {
  if (!t.binds(y0)) return std::nullopt;
  auto [cof, rest] = t.phase.split_on(y0);
  if (cof.is_zero()) return std::nullopt;
  std::vector<BoolMonomial> monos;
  monos.reserve(cof.size());
  for (const auto& [m, c] : cof.terms()) {
    if (!(c == DyadicMod1(1, 1))) return std::nullopt;
    monos.push_back(m);
  }
  return BoolPoly(std::move(monos));
}

namespace detail {

/// Applies the substitution v <- r to the phase and every boundary
/// polynomial; the variable list is left for the caller to adjust.
inline SopTerm subst_everywhere(const SopTerm& t, Var v, const BoolPoly& r) {
  SopTerm s;
  s.halfpow = t.halfpow;
  s.vars = t.vars;
  s.phase = phase_subst(t.phase, v, r);
  s.outputs.reserve(t.outputs.size());
  for (const auto& p : t.outputs) s.outputs.push_back(p.subst(v, r));
  s.inputs.reserve(t.inputs.size());
  for (const auto& p : t.inputs) s.inputs.push_back(p.subst(v, r));
  return s;
}

inline void drop_var(SopTerm& t, Var v) {
  t.vars.erase(std::remove(t.vars.begin(), t.vars.end(), v), t.vars.end());
}

}  // namespace detail

/// y0 appears nowhere: the sum over it contributes a bare factor of 2.
inline std::optional<RuleApp> rule_elim(const SopTerm& t, Var y0) {
  if (!t.binds(y0) || t.phase.contains_var(y0) || !is_internal(t, y0)) return std::nullopt;
  RuleApp app{t, RewriteStep{RuleKind::Elim, {y0}, std::nullopt, std::nullopt, +2}};
  detail::drop_var(app.term, y0);
  app.term.halfpow += 2;
  return app;
}

/// Phase (1/2) y0 + rest with y0 internal: the two branches cancel and the
/// whole map is zero.  Replaced by the canonical zero form of the same arity
/// (the guard against t already being that form keeps this terminating).
inline std::optional<RuleApp> rule_zero(const SopTerm& t, Var y0) {
  if (!t.binds(y0) || !is_internal(t, y0)) return std::nullopt;
  auto b = half_cofactor(t, y0);
  if (!b || !b->is_one()) return std::nullopt;
  if (is_zero_form(t)) return std::nullopt;
  SopTerm z = term_zero(t.out_arity(), t.in_arity());
  int delta = z.halfpow - t.halfpow;
  return RuleApp{std::move(z), RewriteStep{RuleKind::Zero, {y0}, std::nullopt, std::nullopt, delta}};
}

/// The variable the two-variable interference rule below would solve for:
/// the first singleton monomial {yi} of the half-cofactor of y0 (graded-lex
/// order) such that yi occurs nowhere else in the cofactor.
inline std::optional<Var> hh_partner(const SopTerm& t, Var y0) {
  if (!is_internal(t, y0)) return std::nullopt;
  auto b = half_cofactor(t, y0);
  if (!b) return std::nullopt;
  for (const auto& m : b->monomials()) {
    if (m.degree() != 1) continue;
    Var yi = m.vars()[0];
    BoolPoly rest = *b + BoolPoly::variable(yi);
    if (!rest.contains_var(yi)) return yi;
  }
  return std::nullopt;
}

/// Interference collapse: phase (1/2) y0 (yi + B') + R with y0 internal and
/// yi not in B'.  Summing y0 forces yi = B'; substitute, drop both
/// variables, and gain a factor of 2.
inline std::optional<RuleApp> rule_hh(const SopTerm& t, Var y0) {
  auto yi = hh_partner(t, y0);
  if (!yi) return std::nullopt;
  BoolPoly brest = *half_cofactor(t, y0) + BoolPoly::variable(*yi);
  SopTerm s = t;
  s.phase = t.phase.split_on(y0).second;  // drop the (1/2) y0 B part
  s = detail::subst_everywhere(s, *yi, brest);
  detail::drop_var(s, y0);
  detail::drop_var(s, *yi);
  s.halfpow += 2;
  RewriteStep step{RuleKind::HH, {y0, *yi}, std::nullopt, std::make_pair(*yi, brest), +2};
  return RuleApp{std::move(s), std::move(step)};
}

/// Conditional interference collapse.  Write the complemented half-cofactor
/// of y0 as  C = B + 1 = yi*Q + Q'  with Q nonzero and Q*Q' = Q'.  Wherever
/// the y0-sum survives, Q = 1 and yi is forced to 1 + Q'; substituting that
/// removes yi, while y0 stays behind (its new cofactor 1 + Q keeps killing
/// the Q = 0 branches), so the scalar does not move.
inline std::optional<RuleApp> rule_hhgen(const SopTerm& t, Var y0, Var yi) {
  if (y0 == yi || !t.binds(yi) || !is_internal(t, y0)) return std::nullopt;
  auto b = half_cofactor(t, y0);
  if (!b) return std::nullopt;
  BoolPoly c = *b + BoolPoly::one();
  auto [q, qp] = c.split_on(yi);
  if (q.is_zero()) return std::nullopt;
  if (!(q * qp == qp)) return std::nullopt;
  BoolPoly repl = BoolPoly::one() + qp;
  SopTerm s = detail::subst_everywhere(t, yi, repl);
  detail::drop_var(s, yi);
  RewriteStep step{RuleKind::HHGen, {y0, yi}, std::nullopt, std::make_pair(yi, repl), 0};
  return RuleApp{std::move(s), std::move(step)};
}

/// Two-pivot interference merge: both y0 and y0p internal with half-cofactors
/// B and B' not mentioning each other's pivot.  Substituting
/// y0p <- y0*(1 + B) folds both constraints onto y0 (its cofactor becomes
/// B + B' + B*B', the OR) and removes y0p for a factor of 2.
inline std::optional<RuleApp> rule_hhnl(const SopTerm& t, Var y0, Var y0p) {
  if (y0 == y0p || !is_internal(t, y0) || !is_internal(t, y0p)) return std::nullopt;
  auto b = half_cofactor(t, y0);
  auto bp = half_cofactor(t, y0p);
  if (!b || !bp) return std::nullopt;
  if (b->contains_var(y0p) || bp->contains_var(y0)) return std::nullopt;
  BoolPoly repl = BoolPoly::variable(y0) * (BoolPoly::one() + *b);
  SopTerm s = detail::subst_everywhere(t, y0p, repl);
  detail::drop_var(s, y0p);
  s.halfpow += 2;
  RewriteStep step{RuleKind::HHNl, {y0, y0p}, std::nullopt, std::make_pair(y0p, repl), +2};
  return RuleApp{std::move(s), std::move(step)};
}

/// Quarter-phase collapse: y0 internal, its cofactor is c0 + (1/2) Q with
/// c0 in {1/4, 3/4} and every nonconstant coefficient exactly 1/2.  Summing
/// y0 gives sqrt(2) * e^(2*i*pi*(1/8 - hat(Q0)/4)) with Q0 = Q (+1 when
/// c0 = 3/4): the variable goes away for half a power of 2 and an
/// eighth-turn correction.
inline std::optional<RuleApp> rule_omega(const SopTerm& t, Var y0) {
  if (!t.binds(y0) || !is_internal(t, y0)) return std::nullopt;
  auto [cof, rest] = t.phase.split_on(y0);
  if (cof.is_zero()) return std::nullopt;
  DyadicMod1 c0 = cof.constant_part();
  if (!(c0 == DyadicMod1(1, 2)) && !(c0 == DyadicMod1(3, 2))) return std::nullopt;
  std::vector<BoolMonomial> monos;
  for (const auto& [m, c] : cof.terms()) {
    if (m.is_one()) continue;
    if (!(c == DyadicMod1(1, 1))) return std::nullopt;
    monos.push_back(m);
  }
  BoolPoly q(std::move(monos));
  if (c0 == DyadicMod1(3, 2)) q += BoolPoly::one();
  SopTerm s = t;
  s.phase = rest;
  s.phase.add_constant(DyadicMod1(1, 3));
  s.phase += phase_scale_reduce(-1, 2, hat_lift(q));
  detail::drop_var(s, y0);
  s.halfpow += 1;
  return RuleApp{std::move(s), RewriteStep{RuleKind::Omega, {y0}, std::nullopt, std::nullopt, +1}};
}

/// Scalar collapse: y0 internal and its entire cofactor is the constant 3/4,
/// so the sum is 1 - i = sqrt(2) * e^(-i*pi/4).
inline std::optional<RuleApp> rule_sqrt2(const SopTerm& t, Var y0) {
  if (!t.binds(y0) || !is_internal(t, y0)) return std::nullopt;
  auto [cof, rest] = t.phase.split_on(y0);
  if (cof.size() != 1 || !(cof.constant_part() == DyadicMod1(3, 2))) return std::nullopt;
  SopTerm s = t;
  s.phase = rest;
  s.phase.add_constant(DyadicMod1(-1, 3));
  detail::drop_var(s, y0);
  s.halfpow += 1;
  return RuleApp{std::move(s), RewriteStep{RuleKind::Sqrt2, {y0}, std::nullopt, std::nullopt, +1}};
}

/// Output shear: output i is y0 + O' with O' nonzero and free of y0, and y0
/// does not occur in any earlier output.  The change of variables
/// y0 <- y0 + O' renames nothing semantically but leaves output i as the
/// bare variable y0.
inline std::optional<RuleApp> rule_ket(const SopTerm& t, std::size_t i, Var y0) {
  if (i >= t.out_arity() || !t.binds(y0)) return std::nullopt;
  BoolPoly oprime = t.outputs[i] + BoolPoly::variable(y0);
  if (oprime.is_zero() || oprime.contains_var(y0)) return std::nullopt;
  for (std::size_t j = 0; j < i; ++j)
    if (t.outputs[j].contains_var(y0)) return std::nullopt;
  BoolPoly repl = BoolPoly::variable(y0) + oprime;
  SopTerm s = detail::subst_everywhere(t, y0, repl);
  RewriteStep step{RuleKind::Ket, {y0}, i, std::make_pair(y0, repl), 0};
  return RuleApp{std::move(s), std::move(step)};
}

/// Input shear, symmetric to the output one; additionally y0 must not occur
/// in any output, so the two normalisations cannot fight each other.
inline std::optional<RuleApp> rule_bra(const SopTerm& t, std::size_t i, Var y0) {
  if (i >= t.in_arity() || !t.binds(y0)) return std::nullopt;
  BoolPoly iprime = t.inputs[i] + BoolPoly::variable(y0);
  if (iprime.is_zero() || iprime.contains_var(y0)) return std::nullopt;
  for (std::size_t j = 0; j < i; ++j)
    if (t.inputs[j].contains_var(y0)) return std::nullopt;
  for (const auto& p : t.outputs)
    if (p.contains_var(y0)) return std::nullopt;
  BoolPoly repl = BoolPoly::variable(y0) + iprime;
  SopTerm s = detail::subst_everywhere(t, y0, repl);
  RewriteStep step{RuleKind::Bra, {y0}, i, std::make_pair(y0, repl), 0};
  return RuleApp{std::move(s), std::move(step)};
}

/// Which variables to try first, and in which order rules are preferred.
enum class ScanOrder { Ascending, Descending };

struct Strategy {
  /// Phase-rule preference order (ket/bra run in their own bounded phase).
  std::vector<RuleKind> priority{RuleKind::Zero,  RuleKind::Elim,  RuleKind::HH,   RuleKind::HHGen,
                                 RuleKind::HHNl,  RuleKind::Omega, RuleKind::Sqrt2};
  ScanOrder scan = ScanOrder::Ascending;
  std::uint64_t step_limit = 1'000'000;
  /// Max boundary-shear passes; default (nullopt) is out_arity + in_arity.
  std::optional<std::size_t> ket_bra_passes;
};

/// Default strategy, honouring the SOP_STEP_LIMIT environment variable.
inline Strategy default_strategy() {
  Strategy s;
  if (const char* env = std::getenv("SOP_STEP_LIMIT")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) s.step_limit = v;
  }
  return s;
}

struct ReduceResult {
  SopTerm term;
  std::vector<RewriteStep> trace;
  bool hit_step_limit = false;
};

namespace detail {

inline std::vector<Var> scan_vars(const SopTerm& t, ScanOrder scan) {
  std::vector<Var> vs = t.vars;
  if (scan == ScanOrder::Descending) std::reverse(vs.begin(), vs.end());
  return vs;
}

/// Tries one phase rule anchored at pivot y0, searching any secondary pivot
/// in scan order.
inline std::optional<RuleApp> try_rule_at(const SopTerm& t, RuleKind k, Var y0, ScanOrder scan) {
  switch (k) {
    case RuleKind::Zero: return rule_zero(t, y0);
    case RuleKind::Elim: return rule_elim(t, y0);
    case RuleKind::HH: return rule_hh(t, y0);
    case RuleKind::Omega: return rule_omega(t, y0);
    case RuleKind::Sqrt2: return rule_sqrt2(t, y0);
    case RuleKind::HHGen:
      for (Var yi : scan_vars(t, scan))
        if (auto app = rule_hhgen(t, y0, yi)) return app;
      return std::nullopt;
    case RuleKind::HHNl:
      for (Var y0p : scan_vars(t, scan))
        if (auto app = rule_hhnl(t, y0, y0p)) return app;
      return std::nullopt;
    case RuleKind::Ket:
    case RuleKind::Bra:
      return std::nullopt;  // boundary shears run in their own pass
  }
  return std::nullopt;
}

}  // namespace detail

/// Rewrites t to a fixpoint of the strategy: phase rules by priority with
/// pivots in scan order, then bounded boundary-shear passes (each boundary
/// index fires at most once per pass), re-running the phase rules after any
/// pass that changed something.  Stops early, with a flag, if the step limit
/// is reached; the trace always replays exactly.
inline ReduceResult reduce(const SopTerm& t, const Strategy& strategy = default_strategy()) {
  ReduceResult res{t, {}, false};

  auto apply = [&](RuleApp&& app) {
    res.term = std::move(app.term);
    res.trace.push_back(std::move(app.step));
  };
  auto budget_left = [&]() { return res.trace.size() < strategy.step_limit; };

  auto run_phase_rules = [&]() {
    for (;;) {
      if (!budget_left()) {
        res.hit_step_limit = true;
        return;
      }
      bool fired = false;
      for (RuleKind k : strategy.priority) {
        for (Var y0 : detail::scan_vars(res.term, strategy.scan)) {
          if (auto app = detail::try_rule_at(res.term, k, y0, strategy.scan)) {
            apply(std::move(*app));
            fired = true;
            break;
          }
        }
        if (fired) break;
      }
      if (!fired) return;
    }
  };

  run_phase_rules();
  if (res.hit_step_limit) return res;

  std::size_t max_passes = strategy.ket_bra_passes.value_or(t.out_arity() + t.in_arity());
  for (std::size_t pass = 0; pass < max_passes; ++pass) {
    bool fired = false;
    for (std::size_t i = 0; i < res.term.out_arity(); ++i) {
      if (!budget_left()) {
        res.hit_step_limit = true;
        return res;
      }
      for (Var y0 : detail::scan_vars(res.term, strategy.scan)) {
        if (auto app = rule_ket(res.term, i, y0)) {
          apply(std::move(*app));
          fired = true;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < res.term.in_arity(); ++i) {
      if (!budget_left()) {
        res.hit_step_limit = true;
        return res;
      }
      for (Var y0 : detail::scan_vars(res.term, strategy.scan)) {
        if (auto app = rule_bra(res.term, i, y0)) {
          apply(std::move(*app));
          fired = true;
          break;
        }
      }
    }
    if (!fired) break;
    run_phase_rules();
    if (res.hit_step_limit) return res;
  }
  return res;
}

/// Re-applies a recorded trace to a term; throws if any step no longer
/// applies or resolves to different pivots than recorded.
inline SopTerm replay(const SopTerm& start, const std::vector<RewriteStep>& trace) {
  SopTerm t = start;
  for (std::size_t n = 0; n < trace.size(); ++n) {
    const RewriteStep& step = trace[n];
    std::optional<RuleApp> app;
    auto pivot = [&](std::size_t j) -> Var {
      if (j >= step.pivots.size()) throw Error("replay: step " + std::to_string(n) + " lacks pivots");
      return step.pivots[j];
    };
    switch (step.rule) {
      case RuleKind::Zero: app = rule_zero(t, pivot(0)); break;
      case RuleKind::Elim: app = rule_elim(t, pivot(0)); break;
      case RuleKind::HH: app = rule_hh(t, pivot(0)); break;
      case RuleKind::HHGen: app = rule_hhgen(t, pivot(0), pivot(1)); break;
      case RuleKind::HHNl: app = rule_hhnl(t, pivot(0), pivot(1)); break;
      case RuleKind::Omega: app = rule_omega(t, pivot(0)); break;
      case RuleKind::Sqrt2: app = rule_sqrt2(t, pivot(0)); break;
      case RuleKind::Ket:
        if (!step.index) throw Error("replay: ket step without boundary index");
        app = rule_ket(t, *step.index, pivot(0));
        break;
      case RuleKind::Bra:
        if (!step.index) throw Error("replay: bra step without boundary index");
        app = rule_bra(t, *step.index, pivot(0));
        break;
    }
    if (!app)
      throw Error("replay: step " + std::to_string(n) + " (" + rule_name(step.rule) + ") not applicable");
    if (app->step.pivots != step.pivots)
      throw Error("replay: step " + std::to_string(n) + " resolved to different pivots");
    t = std::move(app->term);
  }
  return t;
}

/// True when no rule of the strategy applies to t.
inline bool is_irreducible(const SopTerm& t, const Strategy& strategy = default_strategy()) {
  for (RuleKind k : strategy.priority)
    for (Var y0 : detail::scan_vars(t, strategy.scan))
      if (detail::try_rule_at(t, k, y0, strategy.scan)) return false;
  for (std::size_t i = 0; i < t.out_arity(); ++i)
    for (Var y0 : t.vars)
      if (rule_ket(t, i, y0)) return false;
  for (std::size_t i = 0; i < t.in_arity(); ++i)
    for (Var y0 : t.vars)
      if (rule_bra(t, i, y0)) return false;
  return true;
}

}  // namespace sop
