#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "corrtherm/generator.hpp"
#include "corrtherm/rng.hpp"

using namespace corrtherm;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// independent oracle: pure bisection on the monotone lift, no Newton polish
double bisect_branch(int p, double c, double eps, double target) {
  auto F = [&](double x) { return p * x + c + eps / kTwoPi * std::sin(kTwoPi * x); };
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (F(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}
}  // namespace

TEST_CASE("eval on the circle") {
  CHECK(GeneratorMap::circle_linear(2, 0.0).eval(Point(0.3)).x() == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(GeneratorMap::circle_linear(2, 0.5).eval(Point(0.8)).x() == doctest::Approx(0.1).epsilon(1e-12));
  // sin(pi/2) = 1 in the closed form
  CHECK(GeneratorMap::circle_perturbed(2, 0.0, 0.5).eval(Point(0.25)).x() ==
        doctest::Approx(0.5 + 0.5 / kTwoPi).epsilon(1e-15));
}

TEST_CASE("jacobians") {
  CHECK(GeneratorMap::circle_linear(3, 0.1).jacobian(Point(0.77)) == 3.0);
  CHECK(GeneratorMap::circle_perturbed(2, 0.0, 0.5).jacobian(Point(0.0)) == doctest::Approx(2.5));
  CHECK(GeneratorMap::torus_linear({{2, 0}, {0, 3}}, {0, 0}).jacobian(Point{0.2, 0.9}) == 6.0);
}

TEST_CASE("construction rejects non-expanding parameters") {
  CHECK_THROWS_AS(GeneratorMap::circle_linear(1, 0.0), ConfigError);
  CHECK_THROWS_AS(GeneratorMap::circle_perturbed(2, 0.0, 1.0), ConfigError);
  CHECK_THROWS_AS(GeneratorMap::torus_linear({{1, 0}, {0, 2}}, {0, 0}), ConfigError);
  CHECK_THROWS_AS(GeneratorMap::torus_linear({{2, 0}, {0, 0}}, {0, 0}), ConfigError);
  CHECK_NOTHROW(GeneratorMap::torus_linear({{2, 1}, {1, 3}}, {0, 0}));
}

TEST_CASE("inverse branches: linear circle") {
  const auto f = GeneratorMap::circle_linear(2, 0.0);
  const auto roots = f.inverse_branches(Point(0.5));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].x() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(roots[1].x() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("inverse branches: diagonal torus") {
  const auto f = GeneratorMap::torus_linear({{2, 0}, {0, 3}}, {0, 0});
  const auto roots = f.inverse_branches(Point{0.0, 0.0});
  REQUIRE(roots.size() == 6);
  // expect {0, 1/2} x {0, 1/3, 2/3}
  int hits = 0;
  for (double a : {0.0, 0.5})
    for (double b : {0.0, 1.0 / 3.0, 2.0 / 3.0})
      for (const Point& r : roots)
        if (distance(r, Point{a, b}) < 1e-9) ++hits;
  CHECK(hits == 6);
}

TEST_CASE("inverse branches: perturbed circle vs bisection oracle") {
  const auto f = GeneratorMap::circle_perturbed(2, 0.0, 0.5);
  const auto roots = f.inverse_branches(Point(0.5));
  REQUIRE(roots.size() == 2);
  for (std::size_t b = 0; b < roots.size(); ++b) {
    CHECK(circle_distance(f.eval(roots[b]).x(), 0.5) < 1e-12);
    const double oracle = bisect_branch(2, 0.0, 0.5, 0.5 + static_cast<double>(b));
    CHECK(std::fabs(roots[b].x() - oracle) < 1e-10);
  }
}

TEST_CASE("round-trip over a 1e3 grid for every kind") {
  const std::vector<GeneratorMap> gens = {
      GeneratorMap::circle_linear(2, 0.5), GeneratorMap::circle_linear(3, 1.0 / 3.0),
      GeneratorMap::circle_perturbed(2, 0.25, -0.4), GeneratorMap::circle_perturbed(3, 0.0, 1.2)};
  for (const auto& f : gens) {
    for (int i = 0; i < 1000; ++i) {
      const Point y(static_cast<double>(i) / 1000.0);
      const auto roots = f.inverse_branches(y);
      REQUIRE(static_cast<int>(roots.size()) == f.degree());
      for (const auto& x : roots) CHECK(distance(f.eval(x), y) <= kTolRootCircle);
      for (std::size_t a = 0; a < roots.size(); ++a)
        for (std::size_t b = a + 1; b < roots.size(); ++b)
          CHECK(distance(roots[a], roots[b]) > 1e-6);
    }
  }
  const auto torus = GeneratorMap::torus_linear({{2, 1}, {0, 2}}, {0.25, 0.0});
  CounterRng rng(42);
  for (int i = 0; i < 300; ++i) {
    const Point y{rng.next_unit(), rng.next_unit()};
    const auto roots = torus.inverse_branches(y);
    REQUIRE(static_cast<int>(roots.size()) == torus.degree());
    for (const auto& x : roots) CHECK(distance(torus.eval(x), y) <= kTolRootTorus);
  }
}

TEST_CASE("local expansion by at least min_expansion") {
  CounterRng rng(7);
  for (const auto& f : {GeneratorMap::circle_linear(2, 0.5),
                        GeneratorMap::circle_perturbed(2, 0.0, 0.3)}) {
    const double lambda0 = f.min_expansion();
    for (int i = 0; i < 20000; ++i) {
      const double x = rng.next_unit();
      const double d = (rng.next_unit() - 0.5) * 0.2 / f.degree();  // branch-local
      const Point a(x), b(x + d);
      const double dist = distance(a, b);
      if (dist == 0.0) continue;
      CHECK(distance(f.eval(a), f.eval(b)) >= lambda0 * dist * (1.0 - 1e-12));
    }
  }
}

TEST_CASE("degree identity by midpoint quadrature") {
  for (const auto& f : {GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(3, 0.5),
                        GeneratorMap::circle_perturbed(2, 0.0, 0.3),
                        GeneratorMap::circle_perturbed(2, 0.5, 0.3)})
    CHECK(std::fabs(degree_check(f) - 1.0) < 1e-6);
  CHECK(std::fabs(degree_check(GeneratorMap::torus_linear({{2, 0}, {0, 3}}, {0, 0})) - 1.0) < 1e-6);
  CHECK(std::fabs(degree_check(GeneratorMap::torus_linear({{2, 1}, {0, 2}}, {0.25, 0})) - 1.0) <
        1e-6);
}

TEST_CASE("mod-1 reduction maps exact 1.0 to 0.0") {
  CHECK(reduce_mod1(1.0) == 0.0);
  CHECK(reduce_mod1(-1e-18) == 0.0);
  CHECK(reduce_mod1(-0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(Point(1.0).x() == 0.0);
}

TEST_CASE("eval rejects dimension mismatch") {
  CHECK_THROWS_AS(GeneratorMap::circle_linear(2, 0.0).eval(Point{0.1, 0.2}), ConfigError);
}
