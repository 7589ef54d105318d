#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "sop/dyadic.hpp"
#include "sop/errors.hpp"

namespace sop {

/// Exact element of the cyclotomic ring Z[1/2, w] at a given level K, where
/// w = e^(i*pi / 2^K) is a primitive 2^(K+1)-th root of unity.
///
/// Stored on the power basis w^0 .. w^(2^K - 1) with dyadic coordinates and
/// the negacyclic reduction w^(2^K) = -1.  The basis is a basis, so
/// coordinate-wise equality is exact equality of complex numbers; K = 1 gives
/// the Gaussian dyadics (w = i) and K >= 2 contains sqrt(2) = w - w^3 scaled
/// to the right level.
class CycloNumber {
 public:
  explicit CycloNumber(int level = 1) : level_(check_level(level)), c_(std::size_t(1) << level_) {}

  static CycloNumber zero(int level) { return CycloNumber(level); }
  static CycloNumber one(int level) {
    CycloNumber x(level);
    x.c_[0] = Dyadic::integer(1);
    return x;
  }
  /// w^j (j taken mod 2^(K+1), with w^(2^K) = -1).
  static CycloNumber root(int level, std::int64_t j) {
    CycloNumber x(level);
    std::int64_t period = std::int64_t(1) << (x.level_ + 1);
    j %= period;
    if (j < 0) j += period;
    std::int64_t half = period / 2;
    if (j < half)
      x.c_[static_cast<std::size_t>(j)] = Dyadic::integer(1);
    else
      x.c_[static_cast<std::size_t>(j - half)] = Dyadic::integer(-1);
    return x;
  }
  static CycloNumber from_dyadic(int level, const Dyadic& d) {
    CycloNumber x(level);
    x.c_[0] = d;
    return x;
  }
  /// e^(2*i*pi * phase) for a dyadic phase; needs level >= denom_log - 1.
  static CycloNumber from_phase(int level, const DyadicMod1& phase) {
    if (phase.denom_log() > level + 1)
      throw LevelTooSmallError("phase with denominator 2^" + std::to_string(phase.denom_log()) +
                               " needs level >= " + std::to_string(phase.denom_log() - 1));
    int sh = level + 1 - phase.denom_log();
    return root(level, static_cast<std::int64_t>(phase.num()) << sh);
  }
  /// sqrt(2) = w^(2^(K-2)) - w^(3*2^(K-2)); needs level >= 2.
  static CycloNumber sqrt2(int level) {
    if (level < 2) throw LevelTooSmallError("sqrt(2) needs level >= 2");
    std::int64_t q = std::int64_t(1) << (level - 2);
    return root(level, q) - root(level, 3 * q);
  }
  /// 2^(p/2) exactly, for any integer p (odd p brings in a sqrt(2) factor).
  static CycloNumber pow2_half(int level, int p) {
    if (p % 2 == 0) return from_dyadic(level, Dyadic::pow2(p / 2));
    return sqrt2(level) * from_dyadic(level, Dyadic::pow2((p - 1) / 2));
  }

  int level() const { return level_; }
  const std::vector<Dyadic>& coords() const { return c_; }
  bool is_zero() const {
    for (const auto& d : c_)
      if (!d.is_zero()) return false;
    return true;
  }

  /// Re-expresses the number at a level >= the current one.
  CycloNumber embed(int level) const {
    if (level < level_) throw LevelTooSmallError("cannot embed into a smaller level");
    if (level == level_) return *this;
    CycloNumber x(level);
    int stride = 1 << (x.level_ - level_);
    for (std::size_t j = 0; j < c_.size(); ++j) x.c_[j * stride] = c_[j];
    return x;
  }

  /// Re-expresses the number at any level whose ring still contains it,
  /// larger or smaller than the current one.
  CycloNumber rescale(int level) const {
    if (level >= level_) return embed(level);
    if (min_level() > level)
      throw LevelTooSmallError("number needs level >= " + std::to_string(min_level()));
    CycloNumber x(level);
    std::size_t stride = std::size_t(1) << (level_ - level);
    for (std::size_t j = 0; j < x.c_.size(); ++j) x.c_[j] = c_[j * stride];
    return x;
  }

  /// Builds a number directly from its power-basis coordinates.
  static CycloNumber from_coords(int level, std::vector<Dyadic> coords) {
    CycloNumber x(level);
    if (coords.size() != x.c_.size())
      throw Error("coordinate vector has wrong length for level " + std::to_string(level));
    x.c_ = std::move(coords);
    return x;
  }

  /// Smallest level whose ring still contains this number.
  int min_level() const {
    int lo = 0;
    for (std::size_t j = 1; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      int tz = std::countr_zero(j);
      lo = std::max(lo, level_ - tz);
    }
    return lo;
  }

  CycloNumber operator+(const CycloNumber& o) const {
    auto [a, b] = aligned(*this, o);
    for (std::size_t j = 0; j < a.c_.size(); ++j) a.c_[j] += b.c_[j];
    return a;
  }
  CycloNumber operator-(const CycloNumber& o) const {
    auto [a, b] = aligned(*this, o);
    for (std::size_t j = 0; j < a.c_.size(); ++j) a.c_[j] -= b.c_[j];
    return a;
  }
  CycloNumber operator-() const {
    CycloNumber x = *this;
    for (auto& d : x.c_) d = -d;
    return x;
  }
  CycloNumber operator*(const CycloNumber& o) const {
    auto [a, b] = aligned(*this, o);
    CycloNumber x(a.level_);
    std::size_t n = a.c_.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (a.c_[j].is_zero()) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (b.c_[k].is_zero()) continue;
        Dyadic prod = a.c_[j] * b.c_[k];
        std::size_t idx = j + k;
        if (idx >= n) {
          idx -= n;
          prod = -prod;  // w^(2^K) = -1
        }
        x.c_[idx] += prod;
      }
    }
    return x;
  }
  CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
  CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }

  CycloNumber scaled(const Dyadic& d) const {
    CycloNumber x = *this;
    for (auto& e : x.c_) e *= d;
    return x;
  }

  /// Complex conjugate: w^j -> w^(-j).
  CycloNumber conj() const {
    CycloNumber x(level_);
    std::size_t n = c_.size();
    x.c_[0] = c_[0];
    for (std::size_t j = 1; j < n; ++j) x.c_[n - j] = -c_[j];
    return x;
  }

  /// Exact equality as complex numbers (levels may differ).
  bool operator==(const CycloNumber& o) const {
    auto [a, b] = aligned(*this, o);
    return a.c_ == b.c_;
  }

  std::complex<double> to_complex() const {
    std::complex<double> acc;
    double step = std::numbers::pi / std::ldexp(1.0, level_);
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      double ang = step * static_cast<double>(j);
      acc += c_[j].to_double() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc;
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    bool first = true;
    for (std::size_t j = 0; j < c_.size(); ++j) {
      if (c_[j].is_zero()) continue;
      if (!first) s += " + ";
      first = false;
      s += c_[j].str();
      if (j > 0) s += "*w^" + std::to_string(j);
    }
    return s + " (w = exp(i*pi/2^" + std::to_string(level_) + "))";
  }

 private:
  static int check_level(int level) {
    if (level < 0) throw LevelTooSmallError("cyclotomic level must be nonnegative");
    if (level > 20) throw OverflowError("cyclotomic level too large");
    return level;
  }
  static std::pair<CycloNumber, CycloNumber> aligned(const CycloNumber& a, const CycloNumber& b) {
    int L = std::max(a.level_, b.level_);
    return {a.embed(L), b.embed(L)};
  }

  int level_;
  std::vector<Dyadic> c_;  // coordinates on w^0 .. w^(2^K - 1)
};

}  // namespace sop
