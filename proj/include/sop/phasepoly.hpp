#pragma once

#include <map>
#include <set>
#include <string>

#include "sop/boolpoly.hpp"
#include "sop/dyadic.hpp"
#include "sop/intpoly.hpp"

namespace sop {

/// Multilinear phase polynomial: monomials in path variables with
/// coefficients in the dyadics mod 1.  A term's phase is e^(2*i*pi*P).
///
/// Reducing coefficients mod 1 is sound because monomials only ever take the
/// values 0 and 1, so an integer shift of a coefficient shifts the phase by a
/// whole turn.
class PhasePoly {
 public:
  PhasePoly() = default;

  static PhasePoly zero() { return PhasePoly(); }
  static PhasePoly term(BoolMonomial m, DyadicMod1 c) {
    PhasePoly p;
    p.add_term(std::move(m), c);
    return p;
  }
  static PhasePoly constant(DyadicMod1 c) { return term(BoolMonomial::one(), c); }

  const std::map<BoolMonomial, DyadicMod1>& terms() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }
  std::size_t size() const { return coef_.size(); }

  DyadicMod1 coefficient(const BoolMonomial& m) const {
    auto it = coef_.find(m);
    return it == coef_.end() ? DyadicMod1() : it->second;
  }
  DyadicMod1 constant_part() const { return coefficient(BoolMonomial::one()); }

  void add_term(BoolMonomial m, DyadicMod1 c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coef_.emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coef_.erase(it);
    }
  }
  void add_constant(DyadicMod1 c) { add_term(BoolMonomial::one(), c); }

  PhasePoly operator+(const PhasePoly& o) const {
    PhasePoly r = *this;
    for (const auto& [m, c] : o.coef_) r.add_term(m, c);
    return r;
  }
  PhasePoly& operator+=(const PhasePoly& o) {
    for (const auto& [m, c] : o.coef_) add_term(m, c);
    return *this;
  }
  PhasePoly operator-() const {
    PhasePoly r;
    for (const auto& [m, c] : coef_) r.coef_.emplace(m, -c);
    return r;
  }

  bool contains_var(Var v) const {
    for (const auto& [m, c] : coef_)
      if (m.contains(v)) return true;
    return false;
  }

  std::set<Var> vars() const {
    std::set<Var> s;
    for (const auto& [m, c] : coef_) s.insert(m.vars().begin(), m.vars().end());
    return s;
  }

  /// Largest denominator exponent over all coefficients (0 for the zero poly).
  int max_denom_log() const {
    int L = 0;
    for (const auto& [m, c] : coef_) L = std::max(L, c.denom_log());
    return L;
  }

  /// Splits as  P = v * cofactor + rest  where neither part mentions v.
  std::pair<PhasePoly, PhasePoly> split_on(Var v) const {
    PhasePoly cof, rest;
    for (const auto& [m, c] : coef_) {
      if (m.contains(v))
        cof.coef_.emplace(m.without(v), c);
      else
        rest.coef_.emplace(m, c);
    }
    return {std::move(cof), std::move(rest)};
  }

  template <typename Assignment>
  DyadicMod1 eval(Assignment&& value_of) const {
    DyadicMod1 acc;
    for (const auto& [m, c] : coef_)
      if (m.eval(value_of)) acc += c;
    return acc;
  }

  template <typename Fn>
  PhasePoly rename(Fn&& f) const {
    PhasePoly r;
    for (const auto& [m, c] : coef_) r.add_term(m.rename(f), c);
    return r;
  }

  bool operator==(const PhasePoly& o) const = default;
  bool operator<(const PhasePoly& o) const { return coef_ < o.coef_; }

  std::string str() const {
    if (coef_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : coef_) {
      if (!first) s += " + ";
      first = false;
      s += c.str();
      if (!m.is_one()) s += "*" + m.str();
    }
    return s;
  }

 private:
  std::map<BoolMonomial, DyadicMod1> coef_;  // no zero coefficients
};

/// (num / 2^denom_log) * p with every coefficient reduced mod 1.
inline PhasePoly phase_scale_reduce(std::int64_t num, int denom_log, const IntPoly& p) {
  PhasePoly r;
  for (const auto& [m, c] : p.terms()) r.add_term(m, DyadicMod1::from_wide(detail::int128(num) * c, denom_log));
  return r;
}

/// Substitutes the XOR-polynomial r for variable v inside a phase polynomial.
///
/// Split P = v * Pv + rest, write Pv over the common denominator 2^L as an
/// integer polynomial Nv, and lift r to its integer form; the result is
/// rest + (lift(r) * Nv) / 2^L, multilinearly reduced and taken mod 1.
inline PhasePoly phase_subst(const PhasePoly& p, Var v, const BoolPoly& r) {
  auto [pv, rest] = p.split_on(v);
  if (pv.is_zero()) return rest;
  int L = pv.max_denom_log();
  IntPoly nv;
  for (const auto& [m, c] : pv.terms()) {
    std::int64_t scaled = detail::checked_shl(static_cast<std::int64_t>(c.num()), L - c.denom_log(), "phase_subst");
    nv = nv + IntPoly(m, scaled);
  }
  return rest + phase_scale_reduce(1, L, hat_lift(r) * nv);
}

}  // namespace sop
