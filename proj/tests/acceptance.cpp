// End-to-end acceptance suite.  Nine independent checks, one summary line
// each ("criterion N ...: pass/FAIL -- detail"); the process exits nonzero
// if any check fails.  The checks cover: soundness of every rewrite rule on
// randomized terms, a recorded example reduction, a non-confluence witness,
// the exponential phase blow-up family, the ZH axiom semantics with recorded
// normal forms, coherence of the two diagram translations, the level-change
// functors, the circuit equivalence checker, and the sqrt(2) scalar gadget.
#include "sop/sop.hpp"

#include <bit>
#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

using namespace sop;

namespace {

BoolPoly Y(Var v) { return BoolPoly::variable(v); }

SopTerm mk(int hp, std::vector<Var> vars,
           std::vector<std::pair<std::vector<Var>, std::pair<std::uint64_t, int>>> ph,
           std::vector<BoolPoly> outs, std::vector<BoolPoly> ins) {
  SopTerm t;
  t.halfpow = hp;
  t.vars = std::move(vars);
  for (auto& [m, c] : ph) t.phase.add_term(BoolMonomial(m), DyadicMod1(c.first, c.second));
  t.outputs = std::move(outs);
  t.inputs = std::move(ins);
  return t;
}

}  // namespace

// Independent exact diagram interpreter: structural recursion with explicit
// per-generator matrices.  Never calls zh_to_sop, so it cross-checks the
// translation-based zh_interp.
namespace oracle {

CycloNumber exact_param(const HParam& p) {
  if (const auto* e = std::get_if<ExactPhase>(&p)) {
    int L = std::max(1, int(e->b) + 1);
    long long mod = 2ll << e->b;
    long long red = ((e->a % mod) + mod) % mod;
    return CycloNumber::from_phase(L, DyadicMod1(std::uint64_t(red) << (L + 1 - (int(e->b) + 1)), L + 1));
  }
  if (const auto* x = std::get_if<ExactReal>(&p)) {
    int L = x->half ? 3 : 1;
    CycloNumber v = CycloNumber::from_dyadic(L, Dyadic(x->num, x->denom_log));
    if (x->half) v = v * CycloNumber::sqrt2(L);
    return v;
  }
  throw Error("exact_param: float label");
}

SopMatrix structural(const ZhPtr& d) {
  using K = ZhDiagram::Kind;
  auto eye = [](std::size_t dim) {
    SopMatrix m(dim, dim, 0);
    for (std::size_t i = 0; i < dim; ++i) m.at(i, i) = CycloNumber::one(0);
    return m;
  };
  switch (d->kind) {
    case K::Compose: return structural(d->left) * structural(d->right);
    case K::Tensor: return structural(d->left).tensor(structural(d->right));
    case K::ZSpider: {
      SopMatrix m(std::size_t(1) << d->m, std::size_t(1) << d->n, 0);
      // all-zero and all-one entries are 1; degenerate 0->0 spider = 1 + 1 = 2
      m.at(0, 0) = CycloNumber::one(0);
      m.at(m.rows() - 1, m.cols() - 1) = m.at(m.rows() - 1, m.cols() - 1) + CycloNumber::one(0);
      return m;
    }
    case K::HSpider: {
      CycloNumber r = exact_param(d->param);
      int L = r.level();
      SopMatrix m(std::size_t(1) << d->m, std::size_t(1) << d->n, L);
      for (std::size_t row = 0; row < m.rows(); ++row)
        for (std::size_t col = 0; col < m.cols(); ++col) {
          bool all = row == m.rows() - 1 && col == m.cols() - 1;
          m.at(row, col) = all ? r : CycloNumber::one(L);
        }
      return m;
    }
    case K::Swap: {
      SopMatrix m(4, 4, 0);
      m.at(0, 0) = m.at(2, 1) = m.at(1, 2) = m.at(3, 3) = CycloNumber::one(0);
      return m;
    }
    case K::Cup: {
      SopMatrix m(4, 1, 0);
      m.at(0, 0) = m.at(3, 0) = CycloNumber::one(0);
      return m;
    }
    case K::Cap: {
      SopMatrix m(1, 4, 0);
      m.at(0, 0) = m.at(0, 3) = CycloNumber::one(0);
      return m;
    }
    case K::Id: return eye(std::size_t(1) << d->n);
    case K::Scalar: {
      SopMatrix m(1, 1, 0);
      m.at(0, 0) = exact_param(d->param);
      return m;
    }
    case K::And: {
      // |AND(x1..xn)><x1..xn|: with zero legs the AND of nothing is 1
      SopMatrix m(2, std::size_t(1) << d->n, 0);
      for (std::size_t c = 0; c < m.cols(); ++c)
        m.at(c == m.cols() - 1 ? 1 : 0, c) = CycloNumber::one(0);
      return m;
    }
    case K::Xor: {
      SopMatrix m(2, std::size_t(1) << d->n, 0);
      for (std::size_t c = 0; c < m.cols(); ++c)
        m.at(std::size_t(std::popcount(c)) & 1, c) = CycloNumber::one(0);
      return m;
    }
    case K::Copy: {
      SopMatrix m(std::size_t(1) << d->m, 2, 0);
      m.at(0, 0) = CycloNumber::one(0);
      m.at(m.rows() - 1, 1) = m.at(m.rows() - 1, 1) + CycloNumber::one(0);
      return m;
    }
    case K::Not: {
      SopMatrix m(2, 2, 0);
      m.at(0, 1) = m.at(1, 0) = CycloNumber::one(0);
      return m;
    }
  }
  throw Error("structural: unknown node");
}

}  // namespace oracle

// --------------------------------------------------------------- criterion 1
// Every rewrite rule preserves the interpretation, on >= 1000 randomized
// terms (<= 8 variables, <= 2 boundary polynomials per side, phase
// denominators <= 2^3), trying every rule at every pivot.  The generator
// mixes targeted shapes so that the rarely-applicable rules (Z), (omega),
// (sqrt2), (HH) fire often enough to be meaningfully exercised.
static bool crit_rule_soundness(std::string& detail) {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<int> nv(1, 8), ar(0, 2), coin(0, 1), dl(1, 3), shape(0, 9);
  std::map<RuleKind, int> fired;
  int terms = 0;
  long long applications = 0;
  auto t0 = std::chrono::steady_clock::now();
  for (int iter = 0; iter < 1000; ++iter) {
    int n = nv(rng);
    SopTerm t;
    for (int i = 0; i < n; ++i) t.vars.push_back(Var(i));
    t.halfpow = std::uniform_int_distribution<int>(-3, 3)(rng);
    int sh = shape(rng);
    std::uniform_int_distribution<int> pickv(0, n - 1);
    if (sh == 0) {
      // (Z)-rule shape: some variable with cofactor exactly {1/2}
      Var y = Var(pickv(rng));
      t.phase.add_term(BoolMonomial(y), DyadicMod1(1, 1));
      t.halfpow = 0;
    } else if (sh == 1) {
      // (omega) shape: cofactor constant 1/4 or 3/4, rest 1/2
      Var y = Var(pickv(rng));
      t.phase.add_term(BoolMonomial(y), DyadicMod1(coin(rng) ? 1 : 3, 2));
      for (int i = 0; i < n; ++i)
        if (Var(i) != y && coin(rng)) t.phase.add_term(BoolMonomial({y, Var(i)}), DyadicMod1(1, 1));
    } else if (sh == 2) {
      // (sqrt2) shape: cofactor exactly the constant 3/4
      Var y = Var(pickv(rng));
      t.phase.add_term(BoolMonomial(y), DyadicMod1(3, 2));
    } else if (sh == 3) {
      // (HH)-friendly: all-1/2 cofactor with a singleton partner
      Var y = Var(pickv(rng));
      Var p = Var(pickv(rng));
      t.phase.add_term(BoolMonomial(y), DyadicMod1(1, 1));
      if (p != y) t.phase.add_term(BoolMonomial({y, p}), DyadicMod1(1, 1));
    }
    int nm = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int j = 0; j < nm; ++j) {
      std::vector<Var> mv;
      for (int i = 0; i < n; ++i)
        if (coin(rng)) mv.push_back(Var(i));
      int d = dl(rng);
      std::uint64_t num = std::uniform_int_distribution<std::uint64_t>(1, (1ull << d) - 1)(rng);
      if (mv.empty()) t.phase.add_constant(DyadicMod1(num, d));
      else t.phase.add_term(BoolMonomial(mv), DyadicMod1(num, d));
    }
    auto rpoly = [&] {
      BoolPoly p;
      for (int i = 0; i < n; ++i)
        if (coin(rng)) p = p + BoolPoly::variable(Var(i));
      if (coin(rng)) p = p + BoolPoly::one();
      return p;
    };
    int no = ar(rng), ni = ar(rng);
    for (int i = 0; i < no; ++i) t.outputs.push_back(rpoly());
    for (int i = 0; i < ni; ++i) t.inputs.push_back(rpoly());
    ++terms;

    SopMatrix before = interp(t);
    bool bad = false;
    auto check = [&](RuleKind k, const std::optional<RuleApp>& app) {
      if (!app || bad) return;
      ++fired[k];
      ++applications;
      if (!(interp(app->term) == before)) {
        bad = true;
        detail = std::string("rule ") + rule_name(k) + " changed the matrix on " + t.str();
      }
    };
    for (int i = 0; i < n; ++i) {
      Var y = Var(i);
      check(RuleKind::Elim, rule_elim(t, y));
      check(RuleKind::Zero, rule_zero(t, y));
      check(RuleKind::HH, rule_hh(t, y));
      check(RuleKind::Omega, rule_omega(t, y));
      check(RuleKind::Sqrt2, rule_sqrt2(t, y));
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        check(RuleKind::HHGen, rule_hhgen(t, y, Var(j)));
        check(RuleKind::HHNl, rule_hhnl(t, y, Var(j)));
      }
      for (std::size_t o = 0; o < t.out_arity(); ++o) check(RuleKind::Ket, rule_ket(t, o, y));
      for (std::size_t in = 0; in < t.in_arity(); ++in) check(RuleKind::Bra, rule_bra(t, in, y));
    }
    if (bad) return false;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  for (RuleKind k : {RuleKind::Zero, RuleKind::Elim, RuleKind::HH, RuleKind::HHGen, RuleKind::HHNl,
                     RuleKind::Omega, RuleKind::Sqrt2, RuleKind::Ket, RuleKind::Bra}) {
    if (fired.find(k) == fired.end()) {
      detail = std::string("rule ") + rule_name(k) + " never fired";
      return false;
    }
  }
  if (ms >= 60000) {
    detail = "took " + std::to_string(ms) + " ms (budget 60 s)";
    return false;
  }
  detail = std::to_string(terms) + " terms, " + std::to_string(applications) +
           " sound applications covering all 9 rules, " + std::to_string(ms) + " ms";
  return true;
}

// --------------------------------------------------------------- criterion 2
// The five-variable example term with phase (y0y1y2 + y2 + y2y3y4)/2 reduces
// to the recorded four-monomial reduct with scalar 2, up to renaming.
static bool crit_example_reduction(std::string& detail) {
  PhasePoly p;
  p.add_term(BoolMonomial({0, 1, 2}), DyadicMod1(1, 1));
  p.add_term(BoolMonomial({2}), DyadicMod1(1, 1));
  p.add_term(BoolMonomial({2, 3, 4}), DyadicMod1(1, 1));
  SopTerm t = make_term(0, {0, 1, 2, 3, 4}, p, {Y(4)}, {Y(0)});
  ReduceResult rr = reduce(t);

  PhasePoly q;
  q.add_term(BoolMonomial({0, 2}), DyadicMod1(1, 1));
  q.add_term(BoolMonomial({2}), DyadicMod1(1, 1));
  q.add_term(BoolMonomial({2, 4}), DyadicMod1(1, 1));
  q.add_term(BoolMonomial({0, 2, 4}), DyadicMod1(1, 1));
  SopTerm expect = make_term(2, {0, 2, 4}, q, {Y(4)}, {Y(0)});

  bool match = canonicalize(rr.term) == canonicalize(expect);
  bool sem = interp(rr.term) == interp(t);
  std::string tr;
  for (auto& s : rr.trace) {
    if (!tr.empty()) tr += ' ';
    tr += rule_name(s.rule);
  }
  if (!match) {
    detail = "reduct differs from the recorded term: got " + rr.term.str();
    return false;
  }
  if (!sem) {
    detail = "reduction changed the matrix";
    return false;
  }
  detail = "trace [" + tr + "] reaches the recorded reduct, matrix preserved";
  return true;
}

// --------------------------------------------------------------- criterion 3
// Non-confluence witness: three scripted strategies reduce one term to three
// recorded irreducible terms that are pairwise syntactically different yet
// interpret to the same matrix.
static bool crit_non_confluence(std::string& detail) {
  PhasePoly p;
  p.add_term(BoolMonomial({0, 6}), DyadicMod1(1, 1));
  p.add_term(BoolMonomial({8, 9, 6}), DyadicMod1(1, 1));
  p.add_term(BoolMonomial({4, 5, 6}), DyadicMod1(1, 1));
  p.add_term(BoolMonomial({8, 9, 12}), DyadicMod1(1, 1));
  SopTerm t = make_term(0, {0, 4, 5, 6, 8, 9, 12}, p, {Y(0)}, {});

  Strategy s1;  // default priority, ascending scan
  Strategy s2;
  s2.priority = {RuleKind::Zero, RuleKind::Elim, RuleKind::HHNl, RuleKind::HH,
                 RuleKind::HHGen, RuleKind::Omega, RuleKind::Sqrt2};
  Strategy s3 = s2;
  s3.scan = ScanOrder::Descending;

  ReduceResult r1 = reduce(t, s1), r2 = reduce(t, s2), r3 = reduce(t, s3);

  PhasePoly q1;
  q1.add_term(BoolMonomial({8, 9, 12}), DyadicMod1(1, 1));
  SopTerm e1 = make_term(2, {4, 5, 8, 9, 12}, q1,
                         {BoolPoly(BoolMonomial({4, 5})) + BoolPoly(BoolMonomial({8, 9}))}, {});
  PhasePoly q2;
  q2.add_term(BoolMonomial({9, 12, 4}), DyadicMod1(1, 1));
  SopTerm e2 = make_term(4, {4, 5, 9, 12}, q2,
                         {BoolPoly(BoolMonomial({9, 12, 4, 5})) + BoolPoly(BoolMonomial({9, 4})) +
                          BoolPoly(BoolMonomial({9, 4, 5})) + BoolPoly(BoolMonomial({4, 5}))},
                         {});
  PhasePoly q3;
  q3.add_term(BoolMonomial({8, 9, 6}), DyadicMod1(1, 1));
  SopTerm e3 = make_term(2, {4, 5, 6, 8, 9}, q3,
                         {BoolPoly(BoolMonomial({4, 5})) + BoolPoly(BoolMonomial({8, 9})) +
                          BoolPoly(BoolMonomial({4, 5, 8, 9}))},
                         {});

  struct Leg { const char* name; const ReduceResult* r; const SopTerm* e; };
  const Leg legs[] = {{"default", &r1, &e1}, {"hhnl-first", &r2, &e2}, {"hhnl-first-descending", &r3, &e3}};
  for (auto& leg : legs) {
    if (!is_irreducible(leg.r->term, s1)) {
      detail = std::string(leg.name) + " result is not irreducible";
      return false;
    }
    if (!(canonicalize(leg.r->term) == canonicalize(*leg.e))) {
      detail = std::string(leg.name) + " missed its recorded form: got " + leg.r->term.str();
      return false;
    }
    if (!(interp(leg.r->term) == interp(t))) {
      detail = std::string(leg.name) + " changed the matrix";
      return false;
    }
  }
  bool distinct = !(canonicalize(r1.term) == canonicalize(r2.term)) &&
                  !(canonicalize(r1.term) == canonicalize(r3.term)) &&
                  !(canonicalize(r2.term) == canonicalize(r3.term));
  if (!distinct) {
    detail = "the three normal forms are not pairwise distinct";
    return false;
  }
  detail = "3 strategies, 3 distinct irreducible terms, one matrix";
  return true;
}

// --------------------------------------------------------------- criterion 4
// Phase blow-up family: t_k has 3(k+1) phase monomials; k applications of
// (HHnl) at the designated pivots leave exactly 2^(k+1)+1 monomials.
static bool crit_blowup(std::string& detail) {
  for (int k = 1; k <= 8; ++k) {
    SopTerm t;
    std::vector<Var> vars;
    for (int i = 0; i <= k; ++i) {
      Var a = 3 * i, b = 3 * i + 1, c = 3 * i + 2;
      vars.insert(vars.end(), {a, b, c});
      t.phase.add_term(BoolMonomial({a, b}), DyadicMod1(1, 1));
      t.phase.add_term(BoolMonomial({a, c}), DyadicMod1(1, 1));
      t.phase.add_term(BoolMonomial({a}), DyadicMod1(1, 1));
    }
    t.vars = vars;
    std::size_t before = t.phase.size();
    if (before != std::size_t(3 * (k + 1))) {
      detail = "k=" + std::to_string(k) + ": starting size " + std::to_string(before);
      return false;
    }
    SopTerm cur = t;
    for (int i = 1; i <= k; ++i) {
      auto app = rule_hhnl(cur, 0, Var(3 * i));
      if (!app) {
        detail = "k=" + std::to_string(k) + ": (HHnl) refused pivot y" + std::to_string(3 * i);
        return false;
      }
      cur = app->term;
    }
    std::size_t want = (std::size_t(1) << (k + 1)) + 1;
    if (cur.phase.size() != want) {
      detail = "k=" + std::to_string(k) + ": got " + std::to_string(cur.phase.size()) +
               " monomials, want " + std::to_string(want);
      return false;
    }
    if (cur.halfpow != 2 * k) {
      detail = "k=" + std::to_string(k) + ": scalar exponent " + std::to_string(cur.halfpow);
      return false;
    }
    // Exact matrix check where path enumeration is still feasible.
    if (k <= 3 && !(interp(cur) == interp(t))) {
      detail = "k=" + std::to_string(k) + ": the expansion changed the matrix";
      return false;
    }
  }
  detail = "k=1..8: 3(k+1) monomials -> 2^(k+1)+1 after k steps, matrix checked for k<=3";
  return true;
}

// --------------------------------------------------------------- criterion 5
// ZH axioms: every axiom pair has exactly equal interpretations, and the
// recorded reduction targets are reached: both sides of zs1/iv/z/ba1/ba2/o
// and the left side of the conjunction axiom reduce to the recorded normal
// forms under the default strategy; the right side of the conjunction axiom
// replays its recorded pivot route.
static bool crit_zh_axioms(std::string& detail) {
  std::map<std::string, ZhAxiom> ax;
  for (auto& a : zh_axioms()) {
    if (!(zh_interp(a.lhs) == zh_interp(a.rhs))) {
      detail = "axiom " + a.name + ": lhs and rhs interpret differently";
      return false;
    }
    ax.emplace(a.name, a);
  }

  struct Case { const char* name; SopTerm nf; bool both_sides; };
  const Case cases[] = {
      {"zs1", mk(0, {0}, {}, {Y(0), Y(0)}, {Y(0), Y(0)}), true},
      {"iv", term_identity(0), true},
      {"z", term_zero(0, 0), true},
      {"ba1", mk(0, {0, 1}, {}, {Y(0), Y(1)}, {Y(0) + Y(1), Y(0) + Y(1)}), true},
      {"ba2", mk(0, {0, 1, 2, 3}, {{{0, 1, 2}, {1, 1}}, {{0, 1, 3}, {1, 1}}}, {Y(0), Y(1)}, {Y(2), Y(3)}), true},
      {"o", mk(2, {0, 1, 2, 3}, {{{0, 2, 3}, {1, 1}}, {{0, 3}, {1, 1}}, {{1, 2, 3}, {1, 1}}}, {Y(0), Y(1)}, {Y(2)}),
       true},
      {"and", mk(2, {0, 1}, {}, {BoolPoly(BoolMonomial({0, 1}))}, {Y(0), Y(1)}), false},
  };
  for (const Case& c : cases) {
    SopTerm nf = canonicalize(c.nf);
    SopTerm l = canonicalize(reduce(zh_to_sop(ax.at(c.name).lhs)).term);
    if (!(l == nf)) {
      detail = std::string(c.name) + ": lhs reduct " + l.str() + " is not the recorded form";
      return false;
    }
    if (c.both_sides) {
      SopTerm r = canonicalize(reduce(zh_to_sop(ax.at(c.name).rhs)).term);
      if (!(r == nf)) {
        detail = std::string(c.name) + ": rhs reduct " + r.str() + " is not the recorded form";
        return false;
      }
    }
  }

  // Recorded route for the conjunction axiom's right side.  The start term is
  // the translated composite after its glue eliminations; the six recorded
  // pivot steps bring it to the same normal form as the left side.
  PhasePoly ph;
  for (auto mono : {BoolMonomial(Var(0)), BoolMonomial({1, 7, 8}), BoolMonomial(Var(1)),
                    BoolMonomial({1, 3, 4}), BoolMonomial({0, 1, 2}), BoolMonomial({0, 2})})
    ph.add_term(mono, DyadicMod1(1, 1));
  SopTerm start = make_term(-4, {0, 1, 2, 3, 4, 7, 8}, ph, {Y(0)},
                            {Y(4) + BoolPoly::one(), Y(7) + BoolPoly::one()});
  if (!(zh_interp(ax.at("and").rhs) == interp(start))) {
    detail = "conjunction route: start term is not the translated right side";
    return false;
  }
  SopTerm cur = start;
  const char* names[] = {"hhnl(8,2)", "bra(0,4)", "bra(1,7)", "hhnl(8,3)", "hhgen(1,0)", "hh(1)"};
  int step = 0;
  auto stepit = [&](std::optional<RuleApp> a) {
    if (!a) throw Error(std::string("conjunction route: step ") + names[step] + " refused");
    cur = a->term;
    ++step;
  };
  stepit(rule_hhnl(cur, 8, 2));
  stepit(rule_bra(cur, 0, 4));
  stepit(rule_bra(cur, 1, 7));
  stepit(rule_hhnl(cur, 8, 3));
  stepit(rule_hhgen(cur, 1, 0));
  stepit(rule_hh(cur, 1));
  SopTerm and_nf = mk(2, {0, 1}, {}, {BoolPoly(BoolMonomial({0, 1}))}, {Y(0), Y(1)});
  if (!(canonicalize(cur) == canonicalize(and_nf))) {
    detail = "conjunction route ended at " + cur.str();
    return false;
  }
  if (!(interp(start) == interp(and_nf))) {
    detail = "conjunction route: matrix not preserved";
    return false;
  }
  detail = "11 axioms exact; 7 recorded normal forms reached; conjunction route replays in 6 steps";
  return true;
}

// --------------------------------------------------------------- criterion 6
// Translation coherence.  (a) zh_interp agrees with an independent structural
// interpreter on random layered diagrams.  (b) sop_to_zh preserves the
// matrix, and the zh_to_sop roundtrip reduces back to something with the
// same matrix; how often the roundtrip reduct coincides syntactically with
// the direct reduct is reported as a tally (non-confluence keeps it below
// 100%).
static bool crit_translation(std::string& detail) {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> wd(1, 3), ld(1, 3), pick(0, 9), coin(0, 1);
  auto random_diagram = [&] {
    int w = wd(rng);
    auto layer_from = [&](int win) {
      std::vector<ZhPtr> parts;
      int left = win;
      while (left > 0) {
        int c = pick(rng);
        if (c <= 1 && left >= 2) { parts.push_back(zh_swap()); left -= 2; }
        else if (c == 2 && left >= 2) { parts.push_back(zh_cap()); left -= 2; }
        else if (c == 3) { parts.push_back(zh_z(1, 1 + coin(rng))); left -= 1; }
        else if (c == 4) { parts.push_back(zh_h(1, 1, ExactPhase{1, 0})); left -= 1; }
        else if (c == 5 && left >= 2) { parts.push_back(zh_h(2, 1, ExactPhase{1, 0})); left -= 2; }
        else if (c == 6 && left >= 2) { parts.push_back(zh_and(2)); left -= 2; }
        else if (c == 7 && left >= 2) { parts.push_back(zh_xor(2)); left -= 2; }
        else if (c == 8) { parts.push_back(zh_not()); left -= 1; }
        else { parts.push_back(zh_id(1)); left -= 1; }
      }
      if (coin(rng)) parts.push_back(zh_cup());
      if (coin(rng)) parts.push_back(zh_scalar(ExactReal{1, 1, true}));
      return zh_tensor_all(parts);
    };
    ZhPtr acc = layer_from(w);
    int layers = ld(rng);
    for (int i = 1; i < layers; ++i) acc = zh_compose(layer_from(int(acc->out_arity())), acc);
    return acc;
  };

  for (int iter = 0; iter < 250; ++iter) {
    ZhPtr d = random_diagram();
    if (!(zh_interp(d) == oracle::structural(d))) {
      detail = "diagram #" + std::to_string(iter) + " disagrees with the structural interpreter";
      return false;
    }
  }

  std::uniform_int_distribution<int> nv(1, 3), arity(0, 2);
  int coincide = 0;
  for (int iter = 0; iter < 250; ++iter) {
    int nn = nv(rng);
    SopTerm t;
    for (int i = 0; i < nn; ++i) t.vars.push_back(Var(i));
    t.halfpow = std::uniform_int_distribution<int>(-2, 2)(rng);
    int nm = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int j = 0; j < nm; ++j) {
      std::vector<Var> mv;
      for (int i = 0; i < nn; ++i)
        if (coin(rng)) mv.push_back(Var(i));
      if (mv.empty()) t.phase.add_constant(DyadicMod1(1, 1));
      else t.phase.add_term(BoolMonomial(mv), DyadicMod1(1, 1));
    }
    auto rpoly = [&] {
      BoolPoly p;
      for (int i = 0; i < nn; ++i)
        if (coin(rng)) p = p + BoolPoly::variable(Var(i));
      if (coin(rng)) p = p + BoolPoly::one();
      return p;
    };
    int no = arity(rng), ni = arity(rng);
    for (int i = 0; i < no; ++i) t.outputs.push_back(rpoly());
    for (int i = 0; i < ni; ++i) t.inputs.push_back(rpoly());

    ZhPtr d = sop_to_zh(t);
    if (!(zh_interp(d) == interp(t))) {
      detail = "term #" + std::to_string(iter) + ": sop_to_zh changed the matrix";
      return false;
    }
    SopTerm back = reduce(zh_to_sop(d)).term;
    if (!(interp(back) == interp(t))) {
      detail = "term #" + std::to_string(iter) + ": roundtrip changed the matrix";
      return false;
    }
    if (canonicalize(back) == canonicalize(reduce(t).term)) ++coincide;
  }
  detail = "250 diagrams vs structural interpreter; 250 terms roundtripped exactly "
           "(syntactic coincidence " + std::to_string(coincide) + "/250)";
  return true;
}

// --------------------------------------------------------------- criterion 7
// Level-change functors.  ascend realizes psi_k on interpretations exactly;
// psi_k is multiplicative on random matrices; descend(ascend(t)) always
// recovers the matrix of t, and its reduct usually coincides syntactically
// with reduce(t) (non-confluence keeps it from always doing so, so the
// syntactic tally has a documented floor instead of a 100% requirement).
static bool crit_level_functors(std::string& detail) {
  std::mt19937_64 rng(20240817);
  std::uniform_int_distribution<int> nv(1, 4), arity(1, 2), coin(0, 1);
  auto random_primed = [&](int k) {
    int n = nv(rng);
    SopTerm t;
    for (int i = 0; i < n; ++i) t.vars.push_back(Var(i));
    t.halfpow = 2 * std::uniform_int_distribution<int>(-1, 1)(rng);
    int nmono = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int j = 0; j < nmono; ++j) {
      std::vector<Var> mv;
      for (int i = 0; i < n; ++i)
        if (coin(rng)) mv.push_back(Var(i));
      int dl = std::uniform_int_distribution<int>(1, k + 1)(rng);
      std::uint64_t num = std::uniform_int_distribution<std::uint64_t>(1, (1ull << dl) - 1)(rng);
      if (mv.empty()) t.phase.add_constant(DyadicMod1(num, dl));
      else t.phase.add_term(BoolMonomial(mv), DyadicMod1(num, dl));
    }
    int no = arity(rng), ni = arity(rng);
    auto rpoly = [&] {
      BoolPoly p;
      for (int i = 0; i < n; ++i)
        if (coin(rng)) p = p + BoolPoly::variable(Var(i));
      if (coin(rng)) p = p + BoolPoly::one();
      return p;
    };
    for (int i = 0; i < no; ++i) t.outputs.push_back(rpoly());
    for (int i = 0; i < ni; ++i) t.inputs.push_back(rpoly());
    return t;
  };

  int coincide = 0, total = 0;
  for (int iter = 0; iter < 300; ++iter) {
    int k = 1 + iter % 3;
    SopTerm t = random_primed(k);
    SopTerm up = ascend(t, k);
    if (!(interp(up) == psi_k_matrix(interp(t), k))) {
      detail = "k=" + std::to_string(k) + ": ascend disagrees with psi_k on " + t.str();
      return false;
    }
    SopTerm down = descend(up, k);
    if (!(interp(down) == interp(t))) {
      detail = "k=" + std::to_string(k) + ": descend(ascend(t)) changed the matrix on " + t.str();
      return false;
    }
    ++total;
    if (canonicalize(reduce(down).term) == canonicalize(reduce(t).term)) ++coincide;
  }
  if (coincide < 200) {
    detail = "descend(ascend(t)) reducts coincide only " + std::to_string(coincide) + "/300 times";
    return false;
  }

  std::uniform_int_distribution<int> cc(-3, 3);
  for (int k = 1; k <= 3; ++k) {
    for (int iter = 0; iter < 50; ++iter) {
      SopMatrix A(2, 2, k), B(2, 2, k);
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) {
          std::vector<Dyadic> ca, cb;
          for (int i = 0; i < (1 << std::max(0, k - 1)); ++i) {
            ca.push_back(Dyadic(cc(rng), std::uniform_int_distribution<int>(0, 2)(rng)));
            cb.push_back(Dyadic(cc(rng), std::uniform_int_distribution<int>(0, 2)(rng)));
          }
          A.at(r, c) = CycloNumber::from_coords(std::max(0, k - 1), ca).rescale(k);
          B.at(r, c) = CycloNumber::from_coords(std::max(0, k - 1), cb).rescale(k);
          // add an odd part so the level-k structure is exercised
          A.at(r, c) = A.at(r, c) + CycloNumber::root(k, 1).scaled(Dyadic(cc(rng), 0));
          B.at(r, c) = B.at(r, c) + CycloNumber::root(k, 1).scaled(Dyadic(cc(rng), 0));
        }
      if (!(psi_k_matrix(A * B, k) == psi_k_matrix(A, k) * psi_k_matrix(B, k))) {
        detail = "psi_" + std::to_string(k) + " failed multiplicativity";
        return false;
      }
    }
  }
  detail = "300 ascend/descend instances exact (reduct coincidence " + std::to_string(coincide) +
           "/300); psi_k multiplicative on 150 matrix pairs";
  return true;
}

// --------------------------------------------------------------- criterion 8
// Circuit verification: four equivalent pairs verify (by rewrite or by the
// exact oracle), and an inequivalent pair is refuted with a witness entry
// that matches the two circuit matrices.
static bool crit_circuits(std::string& detail) {
  struct Pair { const char* name; const char* a; const char* b; };
  const Pair equiv[] = {
      {"HH=I", "qubits 1\nh 0\nh 0\n", "qubits 1\n"},
      {"TofTof=I", "qubits 3\ntof 0 1 2\ntof 0 1 2\n", "qubits 3\n"},
      {"CCZ=H2.Tof.H2", "qubits 3\nccz 0 1 2\n", "qubits 3\nh 2\ntof 0 1 2\nh 2\n"},
      {"7T=Tof",
       "qubits 3\nh 2\ncnot 1 2\ntdg 2\ncnot 0 2\nt 2\ncnot 1 2\ntdg 2\ncnot 0 2\nt 1\nt 2\nh 2\n"
       "cnot 0 1\nt 0\ntdg 1\ncnot 0 1\n",
       "qubits 3\ntof 0 1 2\n"},
  };
  std::string outcomes;
  for (const Pair& p : equiv) {
    VerifyResult r = verify_equivalence(parse_circuit(p.a), parse_circuit(p.b));
    if (r.status != VerifyStatus::VerifiedByRewrite && r.status != VerifyStatus::VerifiedByOracle) {
      detail = std::string(p.name) + " -> " + verify_status_name(r.status);
      return false;
    }
    if (!outcomes.empty()) outcomes += ", ";
    outcomes += std::string(p.name) + " " + verify_status_name(r.status);
  }

  Circuit ca = parse_circuit("qubits 1\nh 0\n");
  Circuit cb = parse_circuit("qubits 1\nx 0\n");
  VerifyResult r = verify_equivalence(ca, cb);
  if (r.status != VerifyStatus::Refuted || !r.witness) {
    detail = std::string("H vs X -> ") + verify_status_name(r.status) + ", expected a refutation";
    return false;
  }
  const VerifyWitness& w = *r.witness;
  SopMatrix ma = interp(reduce(circuit_to_sop(ca)).term);
  SopMatrix mb = interp(reduce(circuit_to_sop(cb)).term);
  bool valid = w.qubits == 1 && w.row < ma.rows() && w.col < ma.cols() &&
               ma.at(w.row, w.col) == w.lhs && mb.at(w.row, w.col) == w.rhs && !(w.lhs == w.rhs);
  if (!valid) {
    detail = "refutation witness does not match the circuit matrices";
    return false;
  }
  detail = outcomes + "; H vs X refuted with a checked witness";
  return true;
}

// --------------------------------------------------------------- criterion 9
// Scalar gadget: the one-variable term 2^(-1/2) sum e^(2 i pi (1/8 + 3y/4))
// evaluates to exactly 1, and rule (sqrt2) erases it -- both on the bare
// gadget and after ensure_primed has absorbed it into an odd-exponent term.
static bool crit_scalar_gadget(std::string& detail) {
  SopTerm g = sqrt2_gadget();
  SopMatrix one(1, 1, 0);
  one.at(0, 0) = CycloNumber::one(0);
  if (!(interp(g) == one)) {
    detail = "gadget does not evaluate to 1";
    return false;
  }
  if (g.halfpow % 2 == 0) {
    detail = "gadget scalar exponent is even; it cannot fix parity";
    return false;
  }
  auto direct = rule_sqrt2(g, 0);
  if (!direct || !direct->term.vars.empty() || direct->term.halfpow != 0 || !direct->term.phase.is_zero()) {
    detail = "(sqrt2) does not erase the bare gadget";
    return false;
  }

  SopTerm h = term_hadamard();
  SopTerm primed = ensure_primed(h);
  if (primed.halfpow % 2 != 0) {
    detail = "ensure_primed left an odd scalar exponent";
    return false;
  }
  std::optional<RuleApp> app;
  for (Var v : primed.vars)
    if ((app = rule_sqrt2(primed, v))) break;
  if (!app) {
    detail = "no (sqrt2) redex after ensure_primed";
    return false;
  }
  if (!(canonicalize(app->term) == canonicalize(h)) || !(interp(app->term) == interp(primed))) {
    detail = "(sqrt2) after ensure_primed did not restore the original term";
    return false;
  }
  detail = "gadget = 1 exactly; (sqrt2) erases it bare and after ensure_primed";
  return true;
}

int main() {
  struct Crit {
    int n;
    const char* what;
    bool (*fn)(std::string&);
  };
  const Crit table[] = {
      {1, "rule soundness", crit_rule_soundness},
      {2, "example reduction", crit_example_reduction},
      {3, "non-confluence witness", crit_non_confluence},
      {4, "phase blow-up family", crit_blowup},
      {5, "ZH axioms and normal forms", crit_zh_axioms},
      {6, "translation coherence", crit_translation},
      {7, "level-change functors", crit_level_functors},
      {8, "circuit verification", crit_circuits},
      {9, "scalar gadget", crit_scalar_gadget},
  };
  int failures = 0;
  for (const Crit& c : table) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.fn(detail);
    } catch (const std::exception& e) {
      ok = false;
      detail = std::string("exception: ") + e.what();
    }
    std::cout << "criterion " << c.n << " (" << c.what << "): " << (ok ? "pass" : "FAIL");
    if (!detail.empty()) std::cout << " -- " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
  }
  if (failures == 0) {
    std::cout << "all 9 criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
