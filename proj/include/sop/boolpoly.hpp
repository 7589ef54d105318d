#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "sop/errors.hpp"

namespace sop {

/// Path-variable identifier.
using Var = std::uint32_t;

/// Product of distinct variables (idempotent: y*y = y).  Empty product is 1.
class BoolMonomial {
 public:
  BoolMonomial() = default;
  explicit BoolMonomial(Var v) : vars_{v} {}
  explicit BoolMonomial(std::vector<Var> vars) : vars_(std::move(vars)) {
    std::sort(vars_.begin(), vars_.end());
    vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
  }

  static BoolMonomial one() { return BoolMonomial(); }

  const std::vector<Var>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  bool is_one() const { return vars_.empty(); }
  bool contains(Var v) const { return std::binary_search(vars_.begin(), vars_.end(), v); }

  /// Product of monomials: union of variable sets.
  BoolMonomial operator*(const BoolMonomial& o) const {
    BoolMonomial r;
    r.vars_.reserve(vars_.size() + o.vars_.size());
    std::set_union(vars_.begin(), vars_.end(), o.vars_.begin(), o.vars_.end(), std::back_inserter(r.vars_));
    return r;
  }

  /// Monomial with variable v removed (no-op if absent).
  BoolMonomial without(Var v) const {
    BoolMonomial r = *this;
    auto it = std::lower_bound(r.vars_.begin(), r.vars_.end(), v);
    if (it != r.vars_.end() && *it == v) r.vars_.erase(it);
    return r;
  }

  template <typename Assignment>
  bool eval(Assignment&& value_of) const {
    for (Var v : vars_)
      if (!value_of(v)) return false;
    return true;
  }

  template <typename Fn>
  BoolMonomial rename(Fn&& f) const {
    std::vector<Var> out;
    out.reserve(vars_.size());
    for (Var v : vars_) out.push_back(f(v));
    return BoolMonomial(std::move(out));
  }

  bool operator==(const BoolMonomial& o) const = default;

  /// Graded-lexicographic order: by degree, then by the sorted variable list.
  bool operator<(const BoolMonomial& o) const {
    if (vars_.size() != o.vars_.size()) return vars_.size() < o.vars_.size();
    return vars_ < o.vars_;
  }

  std::string str() const {
    if (vars_.empty()) return "1";
    std::string s;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (i) s += "*";
      s += "y" + std::to_string(vars_[i]);
    }
    return s;
  }

 private:
  std::vector<Var> vars_;  // sorted, distinct
};

/// Multilinear polynomial over F2: an XOR (symmetric difference) of monomials.
///
/// Kept canonical as a sorted duplicate-free monomial list, so structural
/// equality coincides with equality as a boolean function.
class BoolPoly {
 public:
  BoolPoly() = default;
  explicit BoolPoly(BoolMonomial m) : monos_{std::move(m)} {}
  explicit BoolPoly(std::vector<BoolMonomial> monos) : monos_(std::move(monos)) { normalize(); }

  static BoolPoly zero() { return BoolPoly(); }
  static BoolPoly one() { return BoolPoly(BoolMonomial::one()); }
  static BoolPoly variable(Var v) { return BoolPoly(BoolMonomial(v)); }

  const std::vector<BoolMonomial>& monomials() const { return monos_; }
  bool is_zero() const { return monos_.empty(); }
  bool is_one() const { return monos_.size() == 1 && monos_[0].is_one(); }
  /// True if this is exactly the single variable v.
  bool is_variable(Var v) const {
    return monos_.size() == 1 && monos_[0].degree() == 1 && monos_[0].vars()[0] == v;
  }
  bool has_constant() const { return !monos_.empty() && monos_.front().is_one(); }
  std::size_t degree() const {
    std::size_t d = 0;
    for (const auto& m : monos_) d = std::max(d, m.degree());
    return d;
  }

  bool contains_var(Var v) const {
    for (const auto& m : monos_)
      if (m.contains(v)) return true;
    return false;
  }

  std::set<Var> vars() const {
    std::set<Var> s;
    for (const auto& m : monos_) s.insert(m.vars().begin(), m.vars().end());
    return s;
  }

  /// XOR of polynomials: symmetric difference of monomial sets.
  BoolPoly operator+(const BoolPoly& o) const {
    BoolPoly r;
    std::set_symmetric_difference(monos_.begin(), monos_.end(), o.monos_.begin(), o.monos_.end(),
                                  std::back_inserter(r.monos_));
    return r;
  }
  BoolPoly& operator+=(const BoolPoly& o) { return *this = *this + o; }

  /// AND of polynomials, expanded multilinearly (variables are idempotent).
  BoolPoly operator*(const BoolPoly& o) const {
    std::vector<BoolMonomial> prods;
    prods.reserve(monos_.size() * o.monos_.size());
    for (const auto& a : monos_)
      for (const auto& b : o.monos_) prods.push_back(a * b);
    return BoolPoly(std::move(prods));
  }
  BoolPoly& operator*=(const BoolPoly& o) { return *this = *this * o; }

  /// Substitutes r for every occurrence of variable v.
  BoolPoly subst(Var v, const BoolPoly& r) const {
    BoolPoly with_v, rest;
    for (const auto& m : monos_) {
      if (m.contains(v))
        with_v.monos_.push_back(m.without(v));
      else
        rest.monos_.push_back(m);
    }
    with_v.normalize();  // removing v can merge monomials only via *; keep canonical anyway
    return rest + r * with_v;
  }

  /// The cofactor of v (sum of monomials containing v, with v struck out)
  /// and the remainder not mentioning v, as in  p = v*cofactor + remainder.
  std::pair<BoolPoly, BoolPoly> split_on(Var v) const {
    BoolPoly cof, rest;
    for (const auto& m : monos_) {
      if (m.contains(v))
        cof.monos_.push_back(m.without(v));
      else
        rest.monos_.push_back(m);
    }
    std::sort(cof.monos_.begin(), cof.monos_.end());
    return {std::move(cof), std::move(rest)};
  }

  template <typename Assignment>
  bool eval(Assignment&& value_of) const {
    bool acc = false;
    for (const auto& m : monos_) acc ^= m.eval(value_of);
    return acc;
  }

  template <typename Fn>
  BoolPoly rename(Fn&& f) const {
    std::vector<BoolMonomial> out;
    out.reserve(monos_.size());
    for (const auto& m : monos_) out.push_back(m.rename(f));
    return BoolPoly(std::move(out));
  }

  bool operator==(const BoolPoly& o) const = default;
  bool operator<(const BoolPoly& o) const { return monos_ < o.monos_; }

  std::string str() const {
    if (monos_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < monos_.size(); ++i) {
      if (i) s += "+";
      s += monos_[i].str();
    }
    return s;
  }

 private:
  void normalize() {
    std::sort(monos_.begin(), monos_.end());
    // XOR semantics: pairs of equal monomials cancel.
    std::vector<BoolMonomial> out;
    for (std::size_t i = 0; i < monos_.size();) {
      std::size_t j = i;
      while (j < monos_.size() && monos_[j] == monos_[i]) ++j;
      if ((j - i) % 2) out.push_back(monos_[i]);
      i = j;
    }
    monos_ = std::move(out);
  }

  std::vector<BoolMonomial> monos_;  // sorted (graded-lex), duplicate-free
};

}  // namespace sop
