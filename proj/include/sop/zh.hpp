#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sop/errors.hpp"
#include "sop/rewrite.hpp"
#include "sop/term.hpp"

namespace sop {

/// H-box label e^(i*pi*a/2^b).
struct ExactPhase {
  std::int64_t a = 0;
  int b = 0;
  bool operator==(const ExactPhase&) const = default;
};

/// H-box label (num / 2^denom_log) * sqrt(2)^half — an exact real.
struct ExactReal {
  std::int64_t num = 0;
  int denom_log = 0;
  bool half = false;
  bool operator==(const ExactReal&) const = default;
};

/// H-box / scalar-box label.  A raw double is quarantined: the float
/// interpreter accepts it, the exact pipeline rejects it.
using HParam = std::variant<ExactPhase, ExactReal, double>;

inline std::complex<double> hparam_value(const HParam& p) {
  if (const auto* e = std::get_if<ExactPhase>(&p)) {
    double ang = std::numbers::pi * static_cast<double>(e->a) / std::ldexp(1.0, e->b);
    return {std::cos(ang), std::sin(ang)};
  }
  if (const auto* r = std::get_if<ExactReal>(&p)) {
    double v = static_cast<double>(r->num) / std::ldexp(1.0, r->denom_log);
    return {r->half ? v * std::numbers::sqrt2 : v, 0.0};
  }
  return {std::get<double>(p), 0.0};
}

/// Exactly the label -1?
inline bool hparam_is_minus_one(const HParam& p) {
  if (const auto* e = std::get_if<ExactPhase>(&p)) {
    if (e->b < 0 || e->b > 62) return false;
    std::int64_t mod = std::int64_t(1) << e->b;
    if (e->a % mod != 0) return false;
    return ((e->a / mod) % 2 + 2) % 2 == 1;
  }
  if (const auto* r = std::get_if<ExactReal>(&p)) return !r->half && r->num == -(std::int64_t(1) << r->denom_log);
  return false;
}

/// Exactly a label of the form +-2^(p/2) (nonzero)?
inline bool hparam_is_pm_pow2_half(const HParam& p) {
  if (const auto* e = std::get_if<ExactPhase>(&p)) {
    // e^(i*pi*a/2^b) is +-1 exactly when a/2^b is an integer.
    if (e->b < 0 || e->b > 62) return false;
    return e->a % (std::int64_t(1) << e->b) == 0;
  }
  if (const auto* r = std::get_if<ExactReal>(&p)) {
    std::uint64_t mag = r->num < 0 ? static_cast<std::uint64_t>(-r->num) : static_cast<std::uint64_t>(r->num);
    return mag != 0 && (mag & (mag - 1)) == 0;
  }
  return false;
}

class ZhDiagram;
using ZhPtr = std::shared_ptr<const ZhDiagram>;

/// A ZH diagram, as a tree of generators under sequential and parallel
/// composition.  And/Xor/Copy/Not are macro boxes carried around unexpanded;
/// expand_macros rewrites them into Z/H form.
class ZhDiagram {
 public:
  enum class Kind { ZSpider, HSpider, Swap, Cup, Cap, Id, Scalar, Compose, Tensor, And, Xor, Copy, Not };

  Kind kind;
  std::size_t n = 0, m = 0;  // in / out arity of the whole subtree
  HParam param = ExactPhase{0, 0};
  ZhPtr left, right;  // Compose: left after right; Tensor: left on top

  std::size_t in_arity() const { return n; }
  std::size_t out_arity() const { return m; }
};

namespace detail {

inline ZhPtr zh_node(ZhDiagram::Kind kind, std::size_t n, std::size_t m, HParam param = ExactPhase{0, 0},
                     ZhPtr left = nullptr, ZhPtr right = nullptr) {
  auto d = std::make_shared<ZhDiagram>();
  d->kind = kind;
  d->n = n;
  d->m = m;
  d->param = std::move(param);
  d->left = std::move(left);
  d->right = std::move(right);
  return d;
}

}  // namespace detail

inline ZhPtr zh_z(std::size_t n, std::size_t m) { return detail::zh_node(ZhDiagram::Kind::ZSpider, n, m); }
inline ZhPtr zh_h(std::size_t n, std::size_t m, HParam param) {
  return detail::zh_node(ZhDiagram::Kind::HSpider, n, m, std::move(param));
}
inline ZhPtr zh_swap() { return detail::zh_node(ZhDiagram::Kind::Swap, 2, 2); }
inline ZhPtr zh_cup() { return detail::zh_node(ZhDiagram::Kind::Cup, 0, 2); }
inline ZhPtr zh_cap() { return detail::zh_node(ZhDiagram::Kind::Cap, 2, 0); }
inline ZhPtr zh_id(std::size_t k) { return detail::zh_node(ZhDiagram::Kind::Id, k, k); }
inline ZhPtr zh_scalar(HParam param) { return detail::zh_node(ZhDiagram::Kind::Scalar, 0, 0, std::move(param)); }
inline ZhPtr zh_and(std::size_t s) { return detail::zh_node(ZhDiagram::Kind::And, s, 1); }
inline ZhPtr zh_xor(std::size_t s) { return detail::zh_node(ZhDiagram::Kind::Xor, s, 1); }
inline ZhPtr zh_copy(std::size_t s) { return detail::zh_node(ZhDiagram::Kind::Copy, 1, s); }
inline ZhPtr zh_not() { return detail::zh_node(ZhDiagram::Kind::Not, 1, 1); }

/// f after g.
inline ZhPtr zh_compose(ZhPtr f, ZhPtr g) {
  if (!f || !g) throw Error("zh_compose: null diagram");
  if (f->in_arity() != g->out_arity())
    throw ArityMismatchError("zh_compose: " + std::to_string(f->in_arity()) + " inputs vs " +
                             std::to_string(g->out_arity()) + " outputs");
  // Arities are read before the moves: argument evaluation order is
  // unspecified, so f/g may be moved-from inside the zh_node call otherwise.
  std::size_t n = g->in_arity(), m = f->out_arity();
  return detail::zh_node(ZhDiagram::Kind::Compose, n, m, ExactPhase{0, 0}, std::move(f), std::move(g));
}

inline ZhPtr zh_tensor(ZhPtr f, ZhPtr g) {
  if (!f || !g) throw Error("zh_tensor: null diagram");
  std::size_t n = f->in_arity() + g->in_arity(), m = f->out_arity() + g->out_arity();
  return detail::zh_node(ZhDiagram::Kind::Tensor, n, m, ExactPhase{0, 0}, std::move(f), std::move(g));
}

/// Tensor fold of a list (empty list = the empty diagram).
inline ZhPtr zh_tensor_all(const std::vector<ZhPtr>& parts) {
  if (parts.empty()) return zh_id(0);
  ZhPtr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = zh_tensor(acc, parts[i]);
  return acc;
}

/// The parity-preserving all-ones spider (1/2) H^m . Z(n,m) . H^n, i.e. the
/// gray recolouring of a Z spider.
inline ZhPtr zh_gray(std::size_t n, std::size_t m) {
  HParam m1 = ExactPhase{1, 0};
  std::vector<ZhPtr> hn(n, zh_h(1, 1, m1)), hm(m, zh_h(1, 1, m1));
  ZhPtr core = zh_compose(zh_tensor_all(hm), zh_compose(zh_z(n, m), zh_tensor_all(hn)));
  return zh_tensor(zh_scalar(ExactReal{1, 1, false}), core);
}

/// Number of generator boxes (spiders, H-boxes, macro boxes); wires,
/// crossings, cups/caps and scalar literals do not count.
inline std::size_t zh_spider_count(const ZhPtr& d) {
  if (!d) return 0;
  switch (d->kind) {
    case ZhDiagram::Kind::ZSpider:
    case ZhDiagram::Kind::HSpider:
    case ZhDiagram::Kind::And:
    case ZhDiagram::Kind::Xor:
    case ZhDiagram::Kind::Copy:
    case ZhDiagram::Kind::Not:
      return 1;
    case ZhDiagram::Kind::Compose:
    case ZhDiagram::Kind::Tensor:
      return zh_spider_count(d->left) + zh_spider_count(d->right);
    default:
      return 0;
  }
}

/// Rewrites And/Xor/Copy/Not into their Z/H definitions:
///   And(s)  = (1/2) H(1,1,-1) . H(s,1,-1)
///   Xor(s)  = (1/2) H(1,1,-1) . Z(s,1) . H(1,1,-1)^s
///   Copy(s) = Z(1,s)
///   Not     = Xor(2) . (Id(1) x And(0))
inline ZhPtr expand_macros(const ZhPtr& d) {
  if (!d) throw Error("expand_macros: null diagram");
  HParam m1 = ExactPhase{1, 0};
  HParam half = ExactReal{1, 1, false};
  switch (d->kind) {
    case ZhDiagram::Kind::Compose:
      return zh_compose(expand_macros(d->left), expand_macros(d->right));
    case ZhDiagram::Kind::Tensor:
      return zh_tensor(expand_macros(d->left), expand_macros(d->right));
    case ZhDiagram::Kind::And:
      return zh_tensor(zh_scalar(half), zh_compose(zh_h(1, 1, m1), zh_h(d->n, 1, m1)));
    case ZhDiagram::Kind::Xor: {
      std::vector<ZhPtr> hs(d->n, zh_h(1, 1, m1));
      return zh_tensor(zh_scalar(half),
                       zh_compose(zh_h(1, 1, m1), zh_compose(zh_z(d->n, 1), zh_tensor_all(hs))));
    }
    case ZhDiagram::Kind::Copy:
      return zh_z(1, d->m);
    case ZhDiagram::Kind::Not:
      return zh_compose(expand_macros(zh_xor(2)), zh_tensor(zh_id(1), expand_macros(zh_and(0))));
    default:
      return d;
  }
}

/// Membership in the fragment generated by phase-free Z spiders, H-boxes
/// labelled -1, structural wires, and scalar boxes valued +-2^(p/2).  Macro
/// boxes are in: their expansions above use only those generators.
inline bool zh_th_membership(const ZhPtr& d) {
  if (!d) return false;
  switch (d->kind) {
    case ZhDiagram::Kind::ZSpider:
    case ZhDiagram::Kind::Swap:
    case ZhDiagram::Kind::Cup:
    case ZhDiagram::Kind::Cap:
    case ZhDiagram::Kind::Id:
    case ZhDiagram::Kind::And:
    case ZhDiagram::Kind::Xor:
    case ZhDiagram::Kind::Copy:
    case ZhDiagram::Kind::Not:
      return true;
    case ZhDiagram::Kind::HSpider:
      if (d->n + d->m > 0) return hparam_is_minus_one(d->param);
      return hparam_is_pm_pow2_half(d->param);
    case ZhDiagram::Kind::Scalar:
      return hparam_is_pm_pow2_half(d->param);
    case ZhDiagram::Kind::Compose:
    case ZhDiagram::Kind::Tensor:
      return zh_th_membership(d->left) && zh_th_membership(d->right);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Diagram -> term
// ---------------------------------------------------------------------------

namespace detail {

/// Term for an H-box whose label has modulus one: a single phase monomial
/// over all legs.
inline SopTerm hbox_phase_term(std::size_t n, std::size_t m, DyadicMod1 phase) {
  SopTerm t;
  std::vector<Var> legs;
  for (std::size_t i = 0; i < n + m; ++i) {
    t.vars.push_back(static_cast<Var>(i));
    legs.push_back(static_cast<Var>(i));
  }
  t.phase = PhasePoly::term(BoolMonomial(legs), phase);
  for (std::size_t i = 0; i < n; ++i) t.inputs.push_back(BoolPoly::variable(static_cast<Var>(i)));
  for (std::size_t i = 0; i < m; ++i) t.outputs.push_back(BoolPoly::variable(static_cast<Var>(n + i)));
  return t;
}

/// Term for an H-box labelled 0: 0^x = [x = 0] costs one extra summed
/// variable and a factor 1/2.
inline SopTerm hbox_zero_term(std::size_t n, std::size_t m) {
  SopTerm t;
  std::vector<Var> legs;
  for (std::size_t i = 0; i < n + m; ++i) {
    t.vars.push_back(static_cast<Var>(i));
    legs.push_back(static_cast<Var>(i));
  }
  Var z = static_cast<Var>(n + m);
  t.vars.push_back(z);
  legs.push_back(z);
  t.phase = PhasePoly::term(BoolMonomial(legs), DyadicMod1(1, 1));
  for (std::size_t i = 0; i < n; ++i) t.inputs.push_back(BoolPoly::variable(static_cast<Var>(i)));
  for (std::size_t i = 0; i < m; ++i) t.outputs.push_back(BoolPoly::variable(static_cast<Var>(n + i)));
  t.halfpow = -2;
  return t;
}

/// Scalar term for a +-2^(p/2) box, or the zero scalar for 0.
inline SopTerm scalar_box_term(const ExactReal& r) {
  if (r.num == 0) return term_zero(0, 0);
  std::uint64_t mag = r.num < 0 ? static_cast<std::uint64_t>(-r.num) : static_cast<std::uint64_t>(r.num);
  if ((mag & (mag - 1)) != 0)
    throw UnsupportedScalarError("scalar box value is not 0, +-2^(p/2): " + std::to_string(r.num) + "/2^" +
                                 std::to_string(r.denom_log) + (r.half ? "*sqrt(2)" : ""));
  int j = std::countr_zero(mag);
  SopTerm t;
  t.halfpow = 2 * (j - r.denom_log) + (r.half ? 1 : 0);
  if (r.num < 0) t.phase = PhasePoly::constant(DyadicMod1(1, 1));
  return t;
}

}  // namespace detail

/// Translates a diagram to its sum-over-paths term.  H-boxes must carry a
/// label the exact engine can express: a phase e^(i*pi*a/2^b) or 0 on legged
/// boxes, additionally +-2^(p/2) on scalar (leg-free) boxes.  Float labels
/// always throw.
inline SopTerm zh_to_sop(const ZhPtr& d) {
  if (!d) throw Error("zh_to_sop: null diagram");
  using K = ZhDiagram::Kind;
  switch (d->kind) {
    case K::ZSpider: {
      SopTerm t;
      t.vars = {0};
      t.outputs.assign(d->m, BoolPoly::variable(0));
      t.inputs.assign(d->n, BoolPoly::variable(0));
      return t;
    }
    case K::HSpider:
    case K::Scalar: {
      if (std::holds_alternative<double>(d->param))
        throw UnsupportedScalarError("float H-box label has no exact translation");
      if (const auto* e = std::get_if<ExactPhase>(&d->param)) {
        if (e->b < 0 || e->b > 60) throw UnsupportedScalarError("H-box phase denominator out of range");
        return detail::hbox_phase_term(d->n, d->m, DyadicMod1(e->a, e->b + 1));
      }
      const auto& r = std::get<ExactReal>(d->param);
      if (r.num == 0) return detail::hbox_zero_term(d->n, d->m);
      if (d->n + d->m == 0) return detail::scalar_box_term(r);
      if (!r.half && r.num == -(std::int64_t(1) << r.denom_log))
        return detail::hbox_phase_term(d->n, d->m, DyadicMod1(1, 1));  // label -1
      if (!r.half && r.num == (std::int64_t(1) << r.denom_log))
        return detail::hbox_phase_term(d->n, d->m, DyadicMod1(0, 0));  // label +1
      throw UnsupportedScalarError("legged H-box label must be a unit phase or 0");
    }
    case K::Swap:
      return term_swap();
    case K::Cup:
      return term_cup();
    case K::Cap:
      return term_cap();
    case K::Id:
      return term_identity(d->n);
    case K::Compose:
      return compose(zh_to_sop(d->left), zh_to_sop(d->right));
    case K::Tensor:
      return tensor(zh_to_sop(d->left), zh_to_sop(d->right));
    case K::And: {
      SopTerm t;
      std::vector<Var> all;
      for (std::size_t i = 0; i < d->n; ++i) {
        t.vars.push_back(static_cast<Var>(i));
        all.push_back(static_cast<Var>(i));
        t.inputs.push_back(BoolPoly::variable(static_cast<Var>(i)));
      }
      t.outputs.push_back(BoolPoly(BoolMonomial(all)));  // empty product = 1
      return t;
    }
    case K::Xor: {
      SopTerm t;
      BoolPoly parity;
      for (std::size_t i = 0; i < d->n; ++i) {
        t.vars.push_back(static_cast<Var>(i));
        t.inputs.push_back(BoolPoly::variable(static_cast<Var>(i)));
        parity += BoolPoly::variable(static_cast<Var>(i));
      }
      t.outputs.push_back(parity);
      return t;
    }
    case K::Copy: {
      SopTerm t;
      t.vars = {0};
      t.outputs.assign(d->m, BoolPoly::variable(0));
      t.inputs = {BoolPoly::variable(0)};
      return t;
    }
    case K::Not: {
      SopTerm t;
      t.vars = {0};
      t.outputs = {BoolPoly::variable(0) + BoolPoly::one()};
      t.inputs = {BoolPoly::variable(0)};
      return t;
    }
  }
  throw Error("zh_to_sop: unknown node");
}

/// Exact matrix of a diagram (through the term translation).  The raw
/// translation introduces glue variables per composition, which for nested
/// diagrams can push path enumeration far past the variable cap, so the term
/// is reduced first; every rule preserves the interpretation, making this a
/// semantics-preserving shortcut rather than a change of meaning.
inline SopMatrix zh_interp(const ZhPtr& d, std::optional<int> level = std::nullopt) {
  return interp(reduce(zh_to_sop(d)).term, level);
}

// ---------------------------------------------------------------------------
// Float interpreter (handles every label, including quarantined floats)
// ---------------------------------------------------------------------------

/// Dense complex matrix used only by the float interpreter.
struct CMat {
  std::size_t rows = 0, cols = 0;
  std::vector<std::complex<double>> a;

  CMat() = default;
  CMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  std::complex<double>& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const std::complex<double>& at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }

  CMat operator*(const CMat& o) const {
    if (cols != o.rows) throw ArityMismatchError("float matrix product shape mismatch");
    CMat r(rows, o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t k = 0; k < cols; ++k)
        for (std::size_t j = 0; j < o.cols; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
    return r;
  }
  CMat kron(const CMat& o) const {
    CMat r(rows * o.rows, cols * o.cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        for (std::size_t k = 0; k < o.rows; ++k)
          for (std::size_t l = 0; l < o.cols; ++l) r.at(i * o.rows + k, j * o.cols + l) = at(i, j) * o.at(k, l);
    return r;
  }
};

/// Numeric matrix of a diagram.
inline CMat zh_interp_f(const ZhPtr& d) {
  if (!d) throw Error("zh_interp_f: null diagram");
  using K = ZhDiagram::Kind;
  auto bits_all_set = [](std::size_t x, std::size_t k) { return x == (std::size_t(1) << k) - 1; };
  switch (d->kind) {
    case K::ZSpider: {
      CMat r(std::size_t(1) << d->m, std::size_t(1) << d->n);
      r.at(0, 0) += 1.0;
      r.at(r.rows - 1, r.cols - 1) += 1.0;
      return r;
    }
    case K::HSpider:
    case K::Scalar: {
      CMat r(std::size_t(1) << d->m, std::size_t(1) << d->n);
      for (auto& e : r.a) e = 1.0;
      r.at(r.rows - 1, r.cols - 1) = hparam_value(d->param);
      return r;
    }
    case K::Swap: {
      CMat r(4, 4);
      r.at(0, 0) = r.at(1, 2) = r.at(2, 1) = r.at(3, 3) = 1.0;
      return r;
    }
    case K::Cup: {
      CMat r(4, 1);
      r.at(0, 0) = r.at(3, 0) = 1.0;
      return r;
    }
    case K::Cap: {
      CMat r(1, 4);
      r.at(0, 0) = r.at(0, 3) = 1.0;
      return r;
    }
    case K::Id: {
      CMat r(std::size_t(1) << d->n, std::size_t(1) << d->n);
      for (std::size_t i = 0; i < r.rows; ++i) r.at(i, i) = 1.0;
      return r;
    }
    case K::Compose:
      return zh_interp_f(d->left) * zh_interp_f(d->right);
    case K::Tensor:
      return zh_interp_f(d->left).kron(zh_interp_f(d->right));
    case K::And: {
      CMat r(2, std::size_t(1) << d->n);
      for (std::size_t x = 0; x < r.cols; ++x) r.at(bits_all_set(x, d->n) ? 1 : 0, x) = 1.0;
      return r;
    }
    case K::Xor: {
      CMat r(2, std::size_t(1) << d->n);
      for (std::size_t x = 0; x < r.cols; ++x) r.at(std::popcount(x) % 2, x) = 1.0;
      return r;
    }
    case K::Copy: {
      CMat r(std::size_t(1) << d->m, 2);
      r.at(0, 0) = 1.0;
      r.at(r.rows - 1, 1) = 1.0;
      return r;
    }
    case K::Not: {
      CMat r(2, 2);
      r.at(0, 1) = r.at(1, 0) = 1.0;
      return r;
    }
  }
  throw Error("zh_interp_f: unknown node");
}

// ---------------------------------------------------------------------------
// Term -> diagram
// ---------------------------------------------------------------------------

namespace detail {

/// Permutation diagram on `wires` legs sending input position i to output
/// position perm[i], built from adjacent crossings.
inline ZhPtr perm_diagram(std::vector<std::size_t> perm) {
  std::size_t wires = perm.size();
  ZhPtr acc = zh_id(wires);
  // Bubble sort the current arrangement into 0..wires-1; each adjacent swap
  // is one crossing layer applied after what we have so far.
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::size_t k = 0; k + 1 < wires; ++k) {
      if (perm[k] > perm[k + 1]) {
        std::swap(perm[k], perm[k + 1]);
        ZhPtr layer = zh_tensor_all({zh_id(k), zh_swap(), zh_id(wires - k - 2)});
        acc = zh_compose(layer, acc);
        moved = true;
      }
    }
  }
  return acc;
}

/// 1-output gadget computing an XOR-polynomial from one leg per variable
/// occurrence: And per monomial, Xor across monomials, Not for the constant.
/// Degenerate arities collapse to plain wires.
inline ZhPtr poly_gadget(const BoolPoly& p, std::vector<Var>& legs) {
  std::vector<ZhPtr> ands;
  bool constant = false;
  for (const auto& mono : p.monomials()) {
    if (mono.is_one()) {
      constant = true;
      continue;
    }
    for (Var v : mono.vars()) legs.push_back(v);
    ands.push_back(mono.degree() == 1 ? zh_id(1) : zh_and(mono.degree()));
  }
  ZhPtr core;
  if (ands.empty())
    core = zh_xor(0);  // the constant-0 state
  else if (ands.size() == 1)
    core = ands[0];
  else
    core = zh_compose(zh_xor(ands.size()), zh_tensor_all(ands));
  if (constant) core = zh_compose(zh_not(), core);
  return core;
}

}  // namespace detail

/// Translates a term to a diagram: one Z spider per bound variable
/// broadcasting it to every use, one H-box per phase monomial, And/Xor
/// gadgets for the boundary polynomials (inputs matched through caps), and
/// explicit scalar boxes for the 2^(halfpow/2) prefactor.
inline ZhPtr sop_to_zh(const SopTerm& t) {
  t.validate();

  struct Consumer {
    ZhPtr gadget;            // 1-output gadget, or 0-output phase box
    std::vector<Var> legs;   // variable uses, in the gadget's leg order
    bool is_input = false;
  };
  std::vector<Consumer> cons;
  for (const auto& [mono, c] : t.phase.terms()) {
    Consumer k;
    k.legs = mono.vars();
    k.gadget = zh_h(k.legs.size(), 0, ExactPhase{static_cast<std::int64_t>(c.num()), c.denom_log() - 1});
    cons.push_back(std::move(k));
  }
  for (const auto& p : t.outputs) {
    Consumer k;
    k.gadget = detail::poly_gadget(p, k.legs);
    cons.push_back(std::move(k));
  }
  for (const auto& p : t.inputs) {
    Consumer k;
    k.gadget = detail::poly_gadget(p, k.legs);
    k.is_input = true;
    cons.push_back(std::move(k));
  }

  // Broadcast spiders: Z(0, uses) per variable, in ascending variable order.
  std::map<Var, std::size_t> uses;
  for (const auto& k : cons)
    for (Var v : k.legs) ++uses[v];
  for (Var v : t.vars) uses.emplace(v, 0);  // unused variables still sum: Z(0,0) = 2
  std::vector<ZhPtr> spiders;
  for (const auto& [v, d] : uses) spiders.push_back(zh_z(0, d));

  // Source positions: legs grouped by variable, then in consumer order.
  // Target positions: consumer by consumer.  perm[source] = target.
  std::map<Var, std::size_t> offset;
  std::size_t off = 0;
  for (const auto& [v, d] : uses) {
    offset[v] = off;
    off += d;
  }
  std::size_t total = off;
  std::map<Var, std::size_t> taken;
  std::vector<std::size_t> perm(total);
  std::size_t target = 0;
  for (const auto& k : cons)
    for (Var v : k.legs) perm[offset[v] + taken[v]++] = target++;

  std::size_t n_in = t.in_arity(), n_out = t.out_arity();

  // (spiders x Id_n) -> (perm x Id_n) -> (consumers x Id_n) -> match caps.
  ZhPtr diagram = zh_tensor(zh_tensor_all(spiders), zh_id(n_in));
  diagram = zh_compose(zh_tensor(detail::perm_diagram(perm), zh_id(n_in)), diagram);
  std::vector<ZhPtr> gadgets;
  for (const auto& k : cons) gadgets.push_back(k.gadget);
  diagram = zh_compose(zh_tensor(zh_tensor_all(gadgets), zh_id(n_in)), diagram);

  // Wires now: [n_out gadget outputs][n_in gadget outputs][n_in domain
  // wires].  Interleave the last two groups and cap each pair.
  std::vector<std::size_t> pairing(2 * n_in);
  for (std::size_t i = 0; i < n_in; ++i) {
    pairing[i] = 2 * i;            // gadget output i -> slot 2i
    pairing[n_in + i] = 2 * i + 1;  // domain wire i  -> slot 2i+1
  }
  diagram = zh_compose(zh_tensor(zh_id(n_out), detail::perm_diagram(pairing)), diagram);
  std::vector<ZhPtr> caps(n_in, zh_cap());
  diagram = zh_compose(zh_tensor(zh_id(n_out), zh_tensor_all(caps)), diagram);

  // Scalar: halfpow as Z(0,0) boxes (2 each) and 2^(+-1/2) correction boxes.
  int p = t.halfpow;
  int k2 = p >= 0 ? (p + 1) / 2 : p / 2;  // ceil(p/2)
  for (int i = 0; i < k2; ++i) diagram = zh_tensor(zh_z(0, 0), diagram);
  for (int i = 0; i < -k2; ++i) diagram = zh_tensor(zh_scalar(ExactReal{1, 1, false}), diagram);
  for (int i = 0; i < 2 * k2 - p; ++i) diagram = zh_tensor(zh_scalar(ExactReal{1, 1, true}), diagram);
  return diagram;
}

// ---------------------------------------------------------------------------
// H-box label decomposition
// ---------------------------------------------------------------------------

/// Parameters expressing a 1-leg H-box state (1+r, 1-r)/2 as a scaled phase
/// pair: (1/2)(1+r, 1-r) = 2 s e^(i*alpha/2) (cos(alpha/2), -i e^(i*beta) sin(alpha/2)).
struct HDecomposition {
  double alpha = 0;
  double beta = 0;
  std::complex<double> s;
};

/// Splits an H-box label r with |r| not 0 or 1 into the rotation-style form
/// above.  Real labels keep beta = pi/2; complex labels fold the direction
/// of w = (1-r)/(1+r) into beta.
inline HDecomposition h_decompose(std::complex<double> r) {
  constexpr double eps = 1e-12;
  double mod = std::abs(r);
  if (mod < eps || std::abs(mod - 1.0) < eps)
    throw DomainError("h-box label decomposition needs |r| different from 0 and 1");
  std::complex<double> w = (1.0 - r) / (1.0 + r);
  HDecomposition d;
  if (r.imag() == 0.0) {
    d.alpha = 2.0 * std::atan(w.real());
    d.beta = std::numbers::pi / 2.0;
  } else {
    d.alpha = 2.0 * std::atan(std::abs(w));
    d.beta = std::arg(w) + std::numbers::pi / 2.0;
  }
  std::complex<double> i(0.0, 1.0);
  d.s = (1.0 + r) / (4.0 * std::exp(i * (d.alpha / 2.0)) * std::cos(d.alpha / 2.0));
  return d;
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

struct ZhAxiom {
  std::string name;
  ZhPtr lhs, rhs;
};

/// The defining equations of the calculus, as diagram pairs.  Both sides of
/// every pair translate to terms and agree under the exact interpreter.
inline std::vector<ZhAxiom> zh_axioms() {
  HParam m1 = ExactPhase{1, 0};
  HParam zero = ExactReal{0, 0, false};
  HParam half = ExactReal{1, 1, false};
  HParam inv_sqrt2 = ExactReal{1, 1, true};
  ZhPtr mid_swap = zh_tensor_all({zh_id(1), zh_swap(), zh_id(1)});

  std::vector<ZhAxiom> ax;
  // Spider fusion and the trivial spider.
  ax.push_back({"zs1", zh_compose(zh_z(1, 2), zh_z(2, 1)), zh_z(2, 2)});
  ax.push_back({"zs2", zh_z(1, 1), zh_id(1)});
  // H-box leg bending and involution (up to the Z(0,0) = 2 scalar).
  ax.push_back({"hs1", zh_h(0, 2, m1), zh_compose(zh_tensor(zh_id(1), zh_h(1, 1, m1)), zh_cup())});
  ax.push_back({"hs2", zh_compose(zh_h(1, 1, m1), zh_h(1, 1, m1)), zh_tensor(zh_z(0, 0), zh_id(1))});
  // Bialgebra laws: Z against the gray spider, and Z against H.
  ax.push_back({"ba1",
                zh_compose(zh_tensor(zh_z(2, 1), zh_z(2, 1)),
                           zh_compose(mid_swap, zh_tensor(zh_gray(1, 2), zh_gray(1, 2)))),
                zh_compose(zh_gray(1, 2), zh_z(2, 1))});
  ax.push_back({"ba2",
                zh_compose(zh_tensor(zh_z(2, 1), zh_z(2, 1)),
                           zh_compose(mid_swap, zh_tensor(zh_h(1, 2, m1), zh_h(1, 2, m1)))),
                zh_compose(zh_h(1, 2, m1), zh_xor(2))});
  // Multiplying two -1 points through a spider.
  ax.push_back({"m", zh_compose(zh_z(2, 1), zh_tensor(zh_h(0, 1, m1), zh_h(0, 1, m1))), zh_z(0, 1)});
  // Orthogonality: a branching term against its 0-labelled H-box circuit.
  {
    PhasePoly ph;
    ph.add_term(BoolMonomial({0, 2, 3}), DyadicMod1(1, 1));
    ph.add_term(BoolMonomial({0, 3}), DyadicMod1(1, 1));
    ph.add_term(BoolMonomial({1, 2, 3}), DyadicMod1(1, 1));
    SopTerm lhs_term = make_term(2, {0, 1, 2, 3}, ph, {BoolPoly::variable(0), BoolPoly::variable(1)},
                                 {BoolPoly::variable(2)});
    ZhPtr rhs = zh_compose(zh_tensor(zh_h(1, 1, zero), zh_h(1, 1, zero)),
                           zh_compose(zh_tensor(zh_not(), zh_id(1)), zh_z(1, 2)));
    rhs = zh_tensor(zh_z(0, 0), zh_tensor(zh_z(0, 0), rhs));
    ax.push_back({"o", sop_to_zh(lhs_term), rhs});
  }
  // The And fusion equation, with the right side given as a term.
  {
    PhasePoly ph;
    for (auto mono : {BoolMonomial(Var(0)), BoolMonomial({1, 7, 8}), BoolMonomial(Var(1)),
                      BoolMonomial({1, 3, 4}), BoolMonomial({0, 1, 2}), BoolMonomial({0, 2})})
      ph.add_term(mono, DyadicMod1(1, 1));
    SopTerm rhs_term = make_term(
        -4, {0, 1, 2, 3, 4, 7, 8}, ph, {BoolPoly::variable(0)},
        {BoolPoly::variable(4) + BoolPoly::one(), BoolPoly::variable(7) + BoolPoly::one()});
    ax.push_back({"and", zh_compose(zh_h(1, 1, m1), zh_h(2, 1, m1)), sop_to_zh(rhs_term)});
  }
  // Scalar bookkeeping: 1/2 cancels Z(0,0), and sqrt(1/2) is absorbed by the
  // zero scalar.
  ax.push_back({"iv", zh_tensor(zh_scalar(half), zh_z(0, 0)), zh_id(0)});
  {
    ZhPtr d0 = zh_compose(zh_h(1, 0, m1), zh_z(0, 1));
    ax.push_back({"z", zh_tensor(zh_scalar(inv_sqrt2), d0), d0});
  }
  return ax;
}

}  // namespace sop
