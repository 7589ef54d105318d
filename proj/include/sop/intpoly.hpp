#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "sop/boolpoly.hpp"
#include "sop/dyadic.hpp"

namespace sop {

/// Multilinear polynomial with integer coefficients (variables idempotent).
///
/// This is the target of the {0,1}-lift below: XOR-polynomials become
/// ordinary integer polynomials that agree with them on 0/1 inputs.
/// Coefficient arithmetic is overflow-checked.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(BoolMonomial m, std::int64_t c = 1) {
    if (c != 0) coef_[std::move(m)] = c;
  }

  static IntPoly zero() { return IntPoly(); }
  static IntPoly one() { return IntPoly(BoolMonomial::one()); }

  const std::map<BoolMonomial, std::int64_t>& terms() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }

  IntPoly operator+(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [m, c] : o.coef_) r.add_term(m, c);
    return r;
  }
  IntPoly operator-(const IntPoly& o) const {
    IntPoly r = *this;
    for (const auto& [m, c] : o.coef_) r.add_term(m, detail::checked_mul(c, -1, "IntPoly::-"));
    return r;
  }
  IntPoly operator*(const IntPoly& o) const {
    IntPoly r;
    for (const auto& [ma, ca] : coef_)
      for (const auto& [mb, cb] : o.coef_) r.add_term(ma * mb, detail::checked_mul(ca, cb, "IntPoly::*"));
    return r;
  }
  IntPoly scaled(std::int64_t k) const {
    IntPoly r;
    for (const auto& [m, c] : coef_) r.add_term(m, detail::checked_mul(c, k, "IntPoly::scaled"));
    return r;
  }

  template <typename Assignment>
  std::int64_t eval(Assignment&& value_of) const {
    std::int64_t acc = 0;
    for (const auto& [m, c] : coef_)
      if (m.eval(value_of)) acc = detail::checked_add(acc, c, "IntPoly::eval");
    return acc;
  }

  bool operator==(const IntPoly& o) const = default;

  std::string str() const {
    if (coef_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : coef_) {
      if (!first) s += c < 0 ? " - " : " + ";
      else if (c < 0) s += "-";
      first = false;
      std::int64_t a = c < 0 ? -c : c;
      if (a != 1 || m.is_one()) s += std::to_string(a);
      if (!m.is_one()) {
        if (a != 1) s += "*";
        s += m.str();
      }
    }
    return s;
  }

 private:
  void add_term(const BoolMonomial& m, std::int64_t c) {
    auto it = coef_.find(m);
    if (it == coef_.end()) {
      if (c != 0) coef_.emplace(m, c);
      return;
    }
    it->second = detail::checked_add(it->second, c, "IntPoly::add_term");
    if (it->second == 0) coef_.erase(it);
  }

  std::map<BoolMonomial, std::int64_t> coef_;
};

/// Lifts an XOR-polynomial to the integer polynomial that matches it on every
/// 0/1 assignment: fold  H <- H + M - 2*H*M  over the monomials.
///
/// Every intermediate is itself the lift of a partial XOR, so (by
/// inclusion-exclusion) each coefficient stays bounded by 2^degree; with the
/// checked arithmetic above this cannot silently wrap.
inline IntPoly hat_lift(const BoolPoly& p) {
  IntPoly h;
  for (const auto& m : p.monomials()) {
    IntPoly mpoly{m};
    h = h + mpoly - (h * mpoly).scaled(2);
  }
  return h;
}

}  // namespace sop
