#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "sop/cyclo.hpp"

using namespace sop;

namespace {

bool close(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-9; }

CycloNumber random_cyclo(std::mt19937_64& rng, int level) {
  std::uniform_int_distribution<std::int64_t> num(-4, 4);
  std::uniform_int_distribution<int> dl(0, 2);
  std::vector<Dyadic> coords(std::size_t(1) << level);
  for (auto& c : coords) c = Dyadic(num(rng), dl(rng));
  return CycloNumber::from_coords(level, std::move(coords));
}

}  // namespace

TEST_CASE("roots of unity have the expected complex values") {
  // Level K works in Q(w) with w = e^(i*pi/2^K).
  for (int level = 0; level <= 4; ++level) {
    std::int64_t period = std::int64_t(1) << (level + 1);
    for (std::int64_t j = -period; j <= 2 * period; ++j) {
      double ang = M_PI * double(j) / double(period / 2);
      CHECK(close(CycloNumber::root(level, j).to_complex(), std::polar(1.0, ang)));
    }
  }
  CHECK(CycloNumber::root(1, 1).to_complex().imag() == Catch::Approx(1.0));  // i at level 1
}

TEST_CASE("the defining relation w^(2^K) = -1 holds") {
  for (int level = 0; level <= 4; ++level) {
    std::int64_t half = std::int64_t(1) << level;
    CHECK(CycloNumber::root(level, half) == -CycloNumber::one(level));
    CHECK(CycloNumber::root(level, 2 * half) == CycloNumber::one(level));
    // Products wrap negacyclically.
    CycloNumber w = CycloNumber::root(level, 1);
    CycloNumber acc = CycloNumber::one(level);
    for (std::int64_t j = 0; j < 2 * half; ++j) {
      CHECK(acc == CycloNumber::root(level, j));
      acc *= w;
    }
  }
}

TEST_CASE("sqrt2 squares to two") {
  for (int level = 2; level <= 5; ++level) {
    CycloNumber r = CycloNumber::sqrt2(level);
    CHECK(r * r == CycloNumber::from_dyadic(level, Dyadic::integer(2)));
    CHECK(close(r.to_complex(), {std::sqrt(2.0), 0.0}));
  }
  CHECK_THROWS_AS(CycloNumber::sqrt2(1), LevelTooSmallError);
}

TEST_CASE("half-integer powers of two multiply correctly") {
  for (int p = -5; p <= 5; ++p) {
    CycloNumber x = CycloNumber::pow2_half(4, p);
    CHECK(close(x.to_complex(), {std::pow(2.0, p / 2.0), 0.0}));
    // 2^(p/2) * 2^(-p/2) = 1
    CHECK(x * CycloNumber::pow2_half(4, -p) == CycloNumber::one(4));
  }
}

TEST_CASE("from_phase produces the exact unit complex number") {
  CHECK(CycloNumber::from_phase(2, DyadicMod1(1, 3)) == CycloNumber::root(2, 1));  // e^(i*pi/4)
  CHECK(CycloNumber::from_phase(0, DyadicMod1(1, 1)) == -CycloNumber::one(0));     // e^(i*pi)
  CHECK(CycloNumber::from_phase(3, DyadicMod1()) == CycloNumber::one(3));
  // Denominator 2^3 needs level >= 2.
  CHECK_THROWS_AS(CycloNumber::from_phase(1, DyadicMod1(1, 3)), LevelTooSmallError);
}

TEST_CASE("conjugation mirrors the complex conjugate") {
  std::mt19937_64 rng(301);
  for (int iter = 0; iter < 50; ++iter) {
    CycloNumber x = random_cyclo(rng, 3);
    CHECK(close(x.conj().to_complex(), std::conj(x.to_complex())));
    CHECK(x.conj().conj() == x);
    // x * conj(x) is a nonnegative real.
    auto sq = (x * x.conj()).to_complex();
    CHECK(std::abs(sq.imag()) < 1e-9);
    CHECK(sq.real() > -1e-9);
  }
}

TEST_CASE("ring operations agree with complex arithmetic") {
  std::mt19937_64 rng(302);
  for (int iter = 0; iter < 50; ++iter) {
    CycloNumber a = random_cyclo(rng, 3), b = random_cyclo(rng, 3);
    CHECK(close((a + b).to_complex(), a.to_complex() + b.to_complex()));
    CHECK(close((a - b).to_complex(), a.to_complex() - b.to_complex()));
    CHECK(close((a * b).to_complex(), a.to_complex() * b.to_complex()));
    CHECK(close((-a).to_complex(), -a.to_complex()));
    CHECK(close(a.scaled(Dyadic(3, 1)).to_complex(), 1.5 * a.to_complex()));
  }
}

TEST_CASE("embedding into a larger level preserves the value") {
  std::mt19937_64 rng(303);
  for (int iter = 0; iter < 50; ++iter) {
    CycloNumber x = random_cyclo(rng, 2);
    CycloNumber y = x.embed(4);
    CHECK(y.level() == 4);
    CHECK(x == y);  // equality compares values across levels
    CHECK(close(x.to_complex(), y.to_complex()));
  }
  CHECK_THROWS_AS(random_cyclo(rng, 3).embed(1), LevelTooSmallError);
}

TEST_CASE("min_level and rescale find the smallest faithful level") {
  // i lives at level 1 even when built at level 4.
  CycloNumber i4 = CycloNumber::root(4, 8);
  CHECK(i4.min_level() == 1);
  CycloNumber i1 = i4.rescale(1);
  CHECK(i1.level() == 1);
  CHECK(i1 == i4);
  // A primitive 16th root genuinely needs level 3.
  CycloNumber w3 = CycloNumber::root(3, 1);
  CHECK(w3.min_level() == 3);
  CHECK_THROWS_AS(w3.rescale(2), LevelTooSmallError);
  // Rationals live at level 0.
  CHECK(CycloNumber::from_dyadic(3, Dyadic(5, 2)).min_level() == 0);
}

TEST_CASE("equality is value equality across levels") {
  CHECK(CycloNumber::one(0) == CycloNumber::one(4));
  CHECK(CycloNumber::root(1, 1) == CycloNumber::root(3, 4));  // both are i
  CHECK_FALSE(CycloNumber::root(3, 1) == CycloNumber::root(3, 2));
  CHECK(CycloNumber::zero(2).is_zero());
  CHECK_FALSE(CycloNumber::one(2).is_zero());
}

TEST_CASE("from_coords round-trips through coords") {
  std::vector<Dyadic> cs = {Dyadic::integer(1), Dyadic(1, 1), Dyadic::integer(-2), Dyadic(3, 2)};
  CycloNumber x = CycloNumber::from_coords(2, cs);
  CHECK(x.coords() == cs);
  CHECK(x.level() == 2);
}
