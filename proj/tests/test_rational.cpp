#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corrtherm/rational.hpp"
#include "corrtherm/rng.hpp"

using namespace corrtherm;

TEST_CASE("rational arithmetic normalizes and compares") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, 4) == Rational(1, -2));
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1, 2) * Rational(2, 3) == Rational(1, 3));
  CHECK(Rational(7, 24).to_double() == doctest::Approx(7.0 / 24.0).epsilon(1e-15));
  CHECK(Rational(5, 3).floor() == 1);
  CHECK(Rational(-5, 3).floor() == -2);
  CHECK(Rational(7, 3).mod1() == Rational(1, 3));
  CHECK(Rational(-1, 4).mod1() == Rational(3, 4));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK_THROWS_AS(Rational(1, 0), NumericError);
}

TEST_CASE("from_double recovers small fractions") {
  CHECK(Rational::from_double(0.5) == Rational(1, 2));
  CHECK(Rational::from_double(1.0 / 3.0, 1'000'000, 1e-12) == Rational(1, 3));
  CHECK(Rational::from_double(0.25) == Rational(1, 4));
  CHECK(Rational::from_double(2.0 / 3.0, 1'000'000, 1e-12) == Rational(2, 3));
  CHECK(Rational::from_double(0.0) == Rational(0));
}

TEST_CASE("interval set measure and intersection") {
  IntervalSet half(RatInterval{Rational(0), Rational(1, 2)});
  IntervalSet third(RatInterval{Rational(1, 3), Rational(2, 3)});
  CHECK(half.measure() == Rational(1, 2));
  CHECK(half.intersect(third).measure() == Rational(1, 6));
  CHECK(half.unite(third).measure() == Rational(2, 3));
  CHECK(half.intersect(IntervalSet()).empty());
}

TEST_CASE("linear pullback: doubling preimage of [0,1/2)") {
  IntervalSet half(RatInterval{Rational(0), Rational(1, 2)});
  // x -> 2x: preimage is [0,1/4) u [1/2,3/4)
  IntervalSet pre = half.pullback_linear(2, Rational(0));
  REQUIRE(pre.size() == 2);
  CHECK(pre.parts()[0].lo == Rational(0));
  CHECK(pre.parts()[0].hi == Rational(1, 4));
  CHECK(pre.parts()[1].lo == Rational(1, 2));
  CHECK(pre.parts()[1].hi == Rational(3, 4));
  // x -> 3x: measure preserved
  CHECK(half.pullback_linear(3, Rational(0)).measure() == Rational(1, 2));
  // shifted: x -> 2x + 1/2
  IntervalSet pre_s = half.pullback_linear(2, Rational(1, 2));
  CHECK(pre_s.measure() == Rational(1, 2));
}

TEST_CASE("pullback preserves measure for random rational intervals") {
  CounterRng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const std::int64_t den = 2 + static_cast<std::int64_t>(rng.next_below(60));
    std::int64_t a = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(den)));
    std::int64_t b = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(den)));
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    IntervalSet s(RatInterval{Rational(a, den), Rational(b, den)});
    const std::int64_t slope = 2 + static_cast<std::int64_t>(rng.next_below(4));
    const Rational shift(static_cast<std::int64_t>(rng.next_below(12)), 12);
    CHECK(s.pullback_linear(slope, shift).measure() == s.measure());
  }
}
