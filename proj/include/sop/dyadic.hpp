#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

#include "sop/errors.hpp"

namespace sop {

namespace detail {

using int128 = __int128;

inline std::int64_t checked_narrow(int128 v, const char* ctx) {
  if (v > int128(INT64_MAX) || v < int128(INT64_MIN)) throw OverflowError(std::string("overflow in ") + ctx);
  return static_cast<std::int64_t>(v);
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* ctx) {
  return checked_narrow(int128(a) * int128(b), ctx);
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* ctx) {
  return checked_narrow(int128(a) + int128(b), ctx);
}

inline std::int64_t checked_shl(std::int64_t a, int sh, const char* ctx) {
  if (sh < 0 || sh > 62) throw OverflowError(std::string("shift out of range in ") + ctx);
  int128 v = int128(a) << sh;
  return checked_narrow(v, ctx);
}

}  // namespace detail

/// Signed dyadic rational num / 2^denom_log, stored reduced (num odd, or 0/2^0).
class Dyadic {
 public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t num, int denom_log) : num_(num), denom_log_(denom_log) { reduce(); }
  static Dyadic integer(std::int64_t n) { return Dyadic(n, 0); }
  /// 2^p for p >= 0, 1/2^(-p) for p < 0.
  static Dyadic pow2(int p) {
    if (p >= 0) return Dyadic(detail::checked_shl(1, p, "Dyadic::pow2"), 0);
    return Dyadic(1, -p);
  }

  std::int64_t num() const { return num_; }
  int denom_log() const { return denom_log_; }
  bool is_zero() const { return num_ == 0; }
  bool is_integer() const { return denom_log_ == 0; }

  Dyadic operator-() const { return Dyadic(-num_, denom_log_); }

  Dyadic operator+(const Dyadic& o) const {
    int L = std::max(denom_log_, o.denom_log_);
    std::int64_t a = detail::checked_shl(num_, L - denom_log_, "Dyadic::+");
    std::int64_t b = detail::checked_shl(o.num_, L - o.denom_log_, "Dyadic::+");
    return Dyadic(detail::checked_add(a, b, "Dyadic::+"), L);
  }
  Dyadic operator-(const Dyadic& o) const { return *this + (-o); }
  Dyadic operator*(const Dyadic& o) const {
    return Dyadic(detail::checked_mul(num_, o.num_, "Dyadic::*"), denom_log_ + o.denom_log_);
  }
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  bool operator==(const Dyadic& o) const = default;

  double to_double() const { return static_cast<double>(num_) / std::ldexp(1.0, denom_log_); }

  std::string str() const {
    if (denom_log_ == 0) return std::to_string(num_);
    return std::to_string(num_) + "/2^" + std::to_string(denom_log_);
  }

 private:
  void reduce() {
    if (denom_log_ < 0) throw OverflowError("negative denominator exponent");
    if (num_ == 0) {
      denom_log_ = 0;
      return;
    }
    while (denom_log_ > 0 && (num_ % 2) == 0) {
      num_ /= 2;
      --denom_log_;
    }
    if (denom_log_ > 62) throw OverflowError("dyadic denominator exponent too large");
  }

  std::int64_t num_ = 0;
  int denom_log_ = 0;
};

/// Dyadic rational reduced modulo 1: num / 2^denom_log with 0 <= num < 2^denom_log.
///
/// This is the coefficient domain of phase polynomials: a phase is only
/// meaningful through e^(2*i*pi*x), so values are kept canonical in [0, 1).
class DyadicMod1 {
 public:
  constexpr DyadicMod1() = default;
  /// Reduces num / 2^denom_log modulo 1 (num may be any signed value).
  DyadicMod1(std::int64_t num, int denom_log) { assign(detail::int128(num), denom_log); }
  static DyadicMod1 from_wide(detail::int128 num, int denom_log) {
    DyadicMod1 q;
    q.assign(num, denom_log);
    return q;
  }
  static DyadicMod1 from_dyadic(const Dyadic& d) { return DyadicMod1(d.num(), d.denom_log()); }

  std::uint64_t num() const { return num_; }
  int denom_log() const { return denom_log_; }
  bool is_zero() const { return num_ == 0; }

  DyadicMod1 operator+(const DyadicMod1& o) const {
    int L = std::max(denom_log_, o.denom_log_);
    detail::int128 a = detail::int128(num_) << (L - denom_log_);
    detail::int128 b = detail::int128(o.num_) << (L - o.denom_log_);
    return from_wide(a + b, L);
  }
  DyadicMod1 operator-() const { return from_wide(-detail::int128(num_), denom_log_); }
  DyadicMod1 operator-(const DyadicMod1& o) const { return *this + (-o); }
  DyadicMod1& operator+=(const DyadicMod1& o) { return *this = *this + o; }

  /// Scales by an integer, modulo 1.
  DyadicMod1 times(detail::int128 k) const { return from_wide(detail::int128(num_) * k, denom_log_); }

  bool operator==(const DyadicMod1& o) const = default;
  auto operator<=>(const DyadicMod1& o) const {
    // Compare as rationals; useful only for deterministic ordering.
    int L = std::max(denom_log_, o.denom_log_);
    return (detail::int128(num_) << (L - denom_log_)) <=> (detail::int128(o.num_) << (L - o.denom_log_));
  }

  /// Signed representative as a plain dyadic in [0, 1).
  Dyadic to_dyadic() const { return Dyadic(static_cast<std::int64_t>(num_), denom_log_); }
  double to_double() const { return static_cast<double>(num_) / std::ldexp(1.0, denom_log_); }

  std::string str() const {
    if (denom_log_ == 0) return "0";
    return std::to_string(num_) + "/2^" + std::to_string(denom_log_);
  }

 private:
  void assign(detail::int128 num, int denom_log) {
    if (denom_log < 0) throw OverflowError("negative denominator exponent");
    if (denom_log > 62) {
      // Reduce first; genuine overflow is still caught below.
      while (denom_log > 0 && num % 2 == 0) {
        num /= 2;
        --denom_log;
      }
      if (denom_log > 62) throw OverflowError("phase denominator exponent too large");
    }
    detail::int128 mod = detail::int128(1) << denom_log;
    num %= mod;
    if (num < 0) num += mod;
    while (denom_log > 0 && num % 2 == 0) {
      num /= 2;
      --denom_log;
    }
    num_ = static_cast<std::uint64_t>(num);
    denom_log_ = denom_log;
  }

  std::uint64_t num_ = 0;  // canonical representative in [0, 2^denom_log_)
  int denom_log_ = 0;
};

}  // namespace sop
