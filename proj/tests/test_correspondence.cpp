#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corrtherm/correspondence.hpp"

using namespace corrtherm;

namespace {
Correspondence make(std::vector<GeneratorMap> gens) { return Correspondence(std::move(gens)); }

Correspondence pair_half() {
  return make({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(2, 0.5)});
}
Correspondence perturbed_pair() {
  return make({GeneratorMap::circle_perturbed(2, 0.0, 0.3),
               GeneratorMap::circle_perturbed(2, 0.5, 0.3)});
}
}  // namespace

TEST_CASE("coincidence gaps of the reference families") {
  CHECK(pair_half().coincidence_gap() == doctest::Approx(0.5).epsilon(1e-9));
  const auto two_three =
      make({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(3, 0.0)});
  CHECK(two_three.coincidence_gap() <= 1e-9);  // coincidence at x = 0
  const auto trio = make({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(2, 0.25),
                          GeneratorMap::circle_linear(2, 0.5)});
  CHECK(trio.coincidence_gap() == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(std::isinf(make({GeneratorMap::circle_linear(2, 0.0)}).coincidence_gap()));
}

TEST_CASE("coincidence gap is permutation-invariant") {
  const auto a = make({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(2, 0.25),
                       GeneratorMap::circle_linear(2, 0.5)});
  const auto b = make({GeneratorMap::circle_linear(2, 0.5), GeneratorMap::circle_linear(2, 0.0),
                       GeneratorMap::circle_linear(2, 0.25)});
  CHECK(a.coincidence_gap() == doctest::Approx(b.coincidence_gap()).epsilon(1e-12));
}

TEST_CASE("expansion constants of {2x, 2x+1/2}") {
  const auto& c = pair_half().constants();
  CHECK(c.coincidence_free);
  CHECK(c.lambda_tilde == doctest::Approx(2.0));
  CHECK(c.epsilon_star == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(c.eta == doctest::Approx(0.9 * 0.125 / 2.0).epsilon(1e-6));
  CHECK(c.eta < std::min(c.epsilon_star / 2.0, 0.125) / c.u0);
}

TEST_CASE("expansion constants flag coincidences") {
  const auto two_three =
      make({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(3, 0.0)});
  const auto& c = two_three.constants();
  CHECK_FALSE(c.coincidence_free);
  CHECK(c.epsilon_star <= 1e-9);
  CHECK(c.u0 == doctest::Approx(2.0));
}

TEST_CASE("k = 1: infinite gap sentinel, lambda from the single map") {
  const auto solo = make({GeneratorMap::circle_linear(2, 0.0)});
  const auto& c = solo.constants();
  CHECK(c.coincidence_free);
  CHECK(std::isinf(c.epsilon_star));
  CHECK(c.lambda_tilde == doctest::Approx(2.0));
}

TEST_CASE("perturbed pair satisfies the one-step expansion inequality") {
  const auto& c = perturbed_pair().constants();  // verification runs inside
  CHECK(c.coincidence_free);
  CHECK(c.lambda_tilde == doctest::Approx(1.7));
  CHECK(c.epsilon_star == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("holder diagnostic: constant Jacobians give C = 0") {
  CHECK(pair_half().holder_diagnostic(2000, 1).constant == 0.0);
  CHECK(make({GeneratorMap::circle_linear(3, 0.0)}).holder_diagnostic(2000, 1).constant == 0.0);
}

TEST_CASE("holder diagnostic: perturbed pair below the derivative bound") {
  const auto fit = perturbed_pair().holder_diagnostic(20000, 2);
  CHECK(fit.pairs_used > 1000);
  // dense-grid maximum of |d/dx log Jac| is the alpha=1 envelope
  double grid_max = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = static_cast<double>(i) / 200000.0;
    const double num = 0.6 * std::numbers::pi * std::sin(2.0 * std::numbers::pi * x);
    const double den = 2.0 + 0.3 * std::cos(2.0 * std::numbers::pi * x);
    grid_max = std::max(grid_max, std::fabs(num / den));
  }
  CHECK(fit.constant <= grid_max * (1.0 + 1e-6));
  CHECK(fit.constant <= 1.109);  // crude sup-num/inf-den envelope
  CHECK(fit.constant > 0.5);     // and the fit is not degenerate
}

TEST_CASE("forward expansiveness of the shipped families") {
  CHECK(pair_half().check_forward_expansive(200, 3, 1e-6));
  const auto thirds = make({GeneratorMap::circle_linear(3, 0.0),
                            GeneratorMap::circle_linear(3, 1.0 / 3.0)});
  CHECK(thirds.check_forward_expansive(200, 4, 1e-8));
  CHECK(perturbed_pair().check_forward_expansive(100, 5, 1e-6));
}

TEST_CASE("orbit metrics") {
  const std::vector<Point> a = {Point(0.1), Point(0.5), Point(0.9)};
  const std::vector<Point> b = {Point(0.15), Point(0.5), Point(0.05)};
  CHECK(orbit_distance_max(a, b) == doctest::Approx(0.15).epsilon(1e-12));
  // d_omega: sum 2^-i d_i/(1+d_i)
  const double d1 = 0.05 / 1.05, d3 = 0.15 / 1.15;
  CHECK(orbit_distance_weighted(a, b) == doctest::Approx(0.5 * d1 + 0.125 * d3).epsilon(1e-12));
  CHECK(orbit_distance_weighted(a, a) == 0.0);
  // triangle inequality on random triples
  const std::vector<Point> c = {Point(0.4), Point(0.45), Point(0.2)};
  CHECK(orbit_distance_weighted(a, c) <=
        orbit_distance_weighted(a, b) + orbit_distance_weighted(b, c) + 1e-15);
}

TEST_CASE("construction rejects mixed dimensions and empty lists") {
  CHECK_THROWS_AS(make({}), ConfigError);
  CHECK_THROWS_AS(make({GeneratorMap::circle_linear(2, 0.0),
                        GeneratorMap::torus_linear({{2, 0}, {0, 3}}, {0, 0})}),
                  ConfigError);
}
