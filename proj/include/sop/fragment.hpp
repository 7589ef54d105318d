#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "sop/errors.hpp"
#include "sop/rewrite.hpp"
#include "sop/term.hpp"

namespace sop {

/// Splits t into composable factors sharing one wire per bound variable:
///
///     [ boundary-in, one diagonal per phase monomial..., boundary-out ]
///
/// boundary-in is sum |y...><inputs|, each diagonal carries exactly one
/// phase monomial on sum |y...><y...|, and boundary-out is
/// 2^(halfpow/2) sum |outputs><y...|.  recompose() folds them back; the
/// fold agrees with t under interp (the raw composite still carries glue
/// variables until reduced).
inline std::vector<SopTerm> monomial_decompose(const SopTerm& t) {
  t.validate();
  std::vector<BoolPoly> wires;
  wires.reserve(t.vars.size());
  for (Var v : t.vars) wires.push_back(BoolPoly::variable(v));

  std::vector<SopTerm> fs;
  SopTerm in;
  in.vars = t.vars;
  in.outputs = wires;
  in.inputs = t.inputs;
  fs.push_back(std::move(in));
  for (const auto& [mono, c] : t.phase.terms()) {
    SopTerm d;
    d.vars = t.vars;
    d.phase = PhasePoly::term(mono, c);
    d.outputs = wires;
    d.inputs = wires;
    fs.push_back(std::move(d));
  }
  SopTerm out;
  out.halfpow = t.halfpow;
  out.vars = t.vars;
  out.outputs = t.outputs;
  out.inputs = wires;
  fs.push_back(std::move(out));
  return fs;
}

/// Sequential fold of a factor list produced by monomial_decompose.
inline SopTerm recompose(const std::vector<SopTerm>& fs) {
  if (fs.empty()) throw Error("recompose: empty factor list");
  SopTerm acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = compose(fs[i], acc);
  return acc;
}

/// The level-lowering representation: an element x = A + w_k B of the level-k
/// ring (even/odd coordinate split) becomes the 2x2 matrix A I + B X_k over
/// level k-1, with X_k = [[0,1],[w_(k-1),0]].  This is an injective ring
/// homomorphism, so it can be applied entrywise to matrices.
inline SopMatrix psi_k(const CycloNumber& x, int k) {
  if (k < 1) throw WrongLevelError("psi: level parameter must be >= 1");
  if (x.min_level() > k)
    throw WrongRingError("number lies at level " + std::to_string(x.min_level()) + ", not " + std::to_string(k));
  CycloNumber xe = x.rescale(k);
  CycloNumber a(k - 1), b(k - 1);
  {
    std::vector<Dyadic> ac(std::size_t(1) << (k - 1)), bc(std::size_t(1) << (k - 1));
    for (std::size_t j = 0; j < xe.coords().size(); ++j) {
      if (j % 2 == 0)
        ac[j / 2] = xe.coords()[j];
      else
        bc[j / 2] = xe.coords()[j];
    }
    a = CycloNumber::from_coords(k - 1, std::move(ac));
    b = CycloNumber::from_coords(k - 1, std::move(bc));
  }
  SopMatrix m(2, 2, k - 1);
  m.at(0, 0) = a;
  m.at(1, 1) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = b * CycloNumber::root(k - 1, 1);
  return m;
}

/// psi_k applied entrywise: each scalar becomes a 2x2 block addressed by a
/// fresh least-significant index bit (the "new last wire").
inline SopMatrix psi_k_matrix(const SopMatrix& mat, int k) {
  SopMatrix r(mat.rows() * 2, mat.cols() * 2, std::max(k - 1, 0));
  for (std::size_t i = 0; i < mat.rows(); ++i)
    for (std::size_t j = 0; j < mat.cols(); ++j) {
      SopMatrix block = psi_k(mat.at(i, j), k);
      for (std::size_t e = 0; e < 2; ++e)
        for (std::size_t d = 0; d < 2; ++d) r.at(2 * i + e, 2 * j + d) = block.at(e, d);
    }
  return r;
}

/// Scalar gadget worth exactly 1, written with a sqrt(2) deficit:
/// 2^(-1/2) sum{y} e^(2*i*pi*(1/8 + 3y/4)).  Tensoring it flips the parity
/// of the scalar exponent without changing the map.
inline SopTerm sqrt2_gadget() {
  SopTerm t;
  t.halfpow = -1;
  t.vars = {0};
  t.phase = PhasePoly::constant(DyadicMod1(1, 3));
  t.phase.add_term(BoolMonomial(Var(0)), DyadicMod1(3, 2));
  return t;
}

/// Makes the scalar exponent even by absorbing a sqrt2_gadget if needed.
inline SopTerm ensure_primed(const SopTerm& t) {
  if (t.halfpow % 2 == 0) return t;
  return tensor(t, sqrt2_gadget());
}

namespace detail {

inline Var fresh_var(const SopTerm& t) { return t.vars.empty() ? 0 : t.vars.back() + 1; }

/// Ascends one decomposition factor, threading the new wire as the last leg.
inline SopTerm ascend_factor(const SopTerm& f, int k) {
  if (f.phase.is_zero() || f.phase.max_denom_log() <= k) {
    SopTerm wire = term_identity(1);
    return tensor(f, wire);
  }
  const auto& [mono, c] = *f.phase.terms().begin();
  // c = l / 2^(k+1) with l odd: contributes w_k^l per satisfied monomial.
  std::uint64_t l = c.num();
  Var yp = fresh_var(f);
  SopTerm r;
  r.halfpow = f.halfpow;
  r.vars = f.vars;
  r.vars.push_back(yp);
  if (l > 1) r.phase.add_term(mono, DyadicMod1(static_cast<std::int64_t>((l - 1) / 2), k));
  r.phase.add_term(mono * BoolMonomial(yp), DyadicMod1(1, k));
  r.outputs = f.outputs;
  r.outputs.push_back(BoolPoly::variable(yp));
  r.inputs = f.inputs;
  r.inputs.push_back(BoolPoly::variable(yp) + BoolPoly(mono));
  return r;
}

}  // namespace detail

/// Moves a term one level down the cyclotomic tower at the price of one
/// extra wire (appended last on both sides): the matrix of the result is
/// psi_k applied entrywise to the matrix of t.  Requires an even scalar
/// exponent (ensure_primed) and phases within level k.
inline SopTerm ascend(const SopTerm& t, int k) {
  if (k < 1) throw WrongLevelError("ascend: level parameter must be >= 1");
  if (t.halfpow % 2 != 0)
    throw NotPrimedFragmentError("ascend needs an even scalar exponent; apply ensure_primed first");
  if (t.phase.max_denom_log() > k + 1)
    throw WrongLevelError("term phases need level " + std::to_string(t.phase.max_denom_log() - 1) +
                          ", have " + std::to_string(k));
  auto fs = monomial_decompose(t);
  SopTerm acc = detail::ascend_factor(fs[0], k);
  for (std::size_t i = 1; i < fs.size(); ++i) acc = compose(detail::ascend_factor(fs[i], k), acc);
  // The factor chain leaves one batch of glue variables per composition,
  // which quickly outgrows what path enumeration can check.  Reducing is
  // interpretation-preserving, so it only tidies the result.
  return reduce(acc).term;
}

/// One-sided inverse of ascend: feed the new input wire the state
/// |0> + w_k |1> and postselect the new output wire on <0|.
inline SopTerm descend(const SopTerm& t, int k) {
  if (k < 1) throw WrongLevelError("descend: level parameter must be >= 1");
  if (t.out_arity() == 0 || t.in_arity() == 0)
    throw ArityTooSmallError("descend needs at least one input and one output wire");
  SopTerm state;
  state.vars = {0};
  state.phase = PhasePoly::term(BoolMonomial(Var(0)), DyadicMod1(1, k + 1));
  state.outputs = {BoolPoly::variable(0)};
  SopTerm bra0;
  bra0.inputs = {BoolPoly::zero()};
  SopTerm fed = compose(t, tensor(term_identity(t.in_arity() - 1), state));
  return compose(tensor(term_identity(t.out_arity() - 1), bra0), fed);
}

}  // namespace sop
