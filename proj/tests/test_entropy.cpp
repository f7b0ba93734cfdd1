#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "corrtherm/entropy.hpp"
#include "corrtherm/orbits.hpp"
#include "corrtherm/transfer.hpp"

using namespace corrtherm;

namespace {
const double kLog2 = std::log(2.0);
const double kLog3 = std::log(3.0);

Correspondence pair_half() {
  return Correspondence({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(2, 0.5)});
}
Correspondence two_three() {
  return Correspondence({GeneratorMap::circle_linear(2, 0.0), GeneratorMap::circle_linear(3, 0.0)});
}
Correspondence perturbed_pair() {
  return Correspondence({GeneratorMap::circle_perturbed(2, 0.0, 0.3),
                         GeneratorMap::circle_perturbed(2, 0.5, 0.3)});
}
}  // namespace

TEST_CASE("doubling map with the generating halves partition: H_n/n = log 2") {
  const auto solo = Correspondence({GeneratorMap::circle_linear(2, 0.0)});
  const auto seq = partition_entropy_rate(GridDensity(1, 256), Kernel::uniform(1), solo, 2, 8);
  for (const auto& [n, rate] : seq) CHECK(rate == doctest::Approx(kLog2).epsilon(1e-12));
}

TEST_CASE("uniform first-level entropy: H_1 = log m") {
  const auto seq = partition_entropy_rate(GridDensity(1, 256), Kernel::uniform(2), pair_half(), 4, 1);
  CHECK(seq.front().second == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("pair family at m=16: the exact rate sequence is 2log2 (1 + 1/n)") {
  const auto seq = partition_entropy_rate(GridDensity(1, 256), Kernel::uniform(2), pair_half(), 16, 8);
  for (const auto& [n, rate] : seq)
    CHECK(rate == doctest::Approx(2.0 * kLog2 * (1.0 + 1.0 / n)).epsilon(1e-10));
  // the a+b/n model recovers the limit exactly for this family
  CHECK(extrapolate_inverse_n(seq) == doctest::Approx(2.0 * kLog2).epsilon(1e-9));
}

TEST_CASE("H_n subadditivity and the rate's monotone decrease") {
  const auto seq = partition_entropy_rate(GridDensity(1, 256), Kernel::uniform(2), pair_half(), 8, 8);
  std::vector<double> H;
  for (const auto& [n, rate] : seq) H.push_back(rate * n);
  for (std::size_t n = 1; n < H.size(); ++n)
    for (std::size_t m = 1; m + n <= H.size(); ++m)
      CHECK(H[n + m - 1] <= H[n - 1] + H[m - 1] + 1e-9);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i)
    CHECK(seq[i + 1].second <= seq[i].second + 1e-9);
}

TEST_CASE("refining the partition never lowers the rate") {
  const GridDensity leb(1, 256);
  const auto coarse = partition_entropy_rate(leb, Kernel::uniform(2), pair_half(), 8, 6);
  const auto fine = partition_entropy_rate(leb, Kernel::uniform(2), pair_half(), 16, 6);
  for (std::size_t i = 0; i < coarse.size(); ++i)
    CHECK(fine[i].second >= coarse[i].second - 1e-9);
}

TEST_CASE("quadrature fallback tracks the exact mode") {
  const GridDensity leb(1, 1 << 12);
  const auto exact = partition_entropy_rate(leb, Kernel::uniform(2), pair_half(), 4, 5);
  const auto quad = partition_entropy_rate(leb, Kernel::uniform(2), perturbed_pair(), 4, 5);
  // the perturbed pair is a smooth perturbation; its rates stay within a few
  // percent of the piecewise-linear family at this depth
  for (std::size_t i = 0; i < exact.size(); ++i)
    CHECK(std::fabs(quad[i].second - exact[i].second) < 0.08);
}

TEST_CASE("fiber entropy closed forms") {
  const GridDensity leb(1, 1 << 12);
  CHECK(fiber_entropy(two_three(), leb) == doctest::Approx(0.5 * (kLog2 + kLog3)).epsilon(1e-12));
  CHECK(fiber_entropy(pair_half(), leb) == doctest::Approx(kLog2).epsilon(1e-12));
  // perturbed pair: grid-refinement oracle
  const auto T = perturbed_pair();
  const double coarse = fiber_entropy(T, GridDensity(1, 1 << 10));
  const double fine = fiber_entropy(T, GridDensity(1, 1 << 12));
  CHECK(std::fabs(coarse - fine) < 1e-6);
}

TEST_CASE("analytic kernel entropy") {
  const GridDensity leb(1, 1 << 12);
  CHECK(kernel_entropy_analytic(two_three(), leb) ==
        doctest::Approx(kLog2 + 0.5 * std::log(6.0)).epsilon(1e-12));
  CHECK(kernel_entropy_analytic(pair_half(), leb) == doctest::Approx(2.0 * kLog2).epsilon(1e-12));
  const auto solo = Correspondence({GeneratorMap::circle_linear(2, 0.0)});
  CHECK(kernel_entropy_analytic(solo, leb) == doctest::Approx(kLog2).epsilon(1e-12));
}

TEST_CASE("variational identity at the uniform kernel") {
  const GridDensity leb(1, 1 << 12);
  const auto v23 = variational_check(two_three(), Potential::torus_measurable(), leb,
                                     Kernel::uniform(2));
  CHECK(v23.entropy_term == doctest::Approx(1.589027).epsilon(1e-6));
  CHECK(v23.lhs == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(std::fabs(v23.gap) <= 1e-9);

  const auto vh = variational_check(pair_half(), Potential::jacobian(), leb, Kernel::uniform(2));
  CHECK(vh.lhs == doctest::Approx(kLog2).epsilon(1e-12));
  CHECK(std::fabs(vh.gap) <= 1e-9);
}

TEST_CASE("suboptimal kernel stays strictly below log k") {
  const GridDensity leb(1, 1 << 12);
  const auto v = variational_check(pair_half(), Potential::jacobian(), leb,
                                   Kernel::constant({0.9, 0.1}));
  // base entropy H(0.9, 0.1) + fiber log2 + potential -log2
  const double base = -(0.9 * std::log(0.9) + 0.1 * std::log(0.1));
  CHECK(v.lhs == doctest::Approx(base).epsilon(1e-9));
  CHECK(v.lhs < kLog2);
  CHECK(v.gap >= 0.3);
}

TEST_CASE("variational check enforces kernel invariance of mu") {
  GridDensity lopsided(1, 256);
  for (std::size_t c = 0; c < lopsided.size(); ++c)
    lopsided[c] = lopsided.cell_center(c).x() < 0.5 ? 1.5 : 0.5;
  CHECK_THROWS_AS(variational_check(pair_half(), Potential::jacobian(), lopsided,
                                    Kernel::uniform(2)),
                  ConfigError);
}

TEST_CASE("variational consistency with the growth pressure") {
  const GridDensity leb(1, 1 << 12);
  for (const auto& T : {pair_half(), perturbed_pair()}) {
    const auto est = pressure_via_growth(T, Potential::jacobian(), Point(0.37), 3, 9).estimate;
    // lhs uses the exact invariant density for the perturbed family
    const auto d = invariant_density(T, Potential::jacobian(), 1 << 12, 1e-10, 300);
    const auto v = variational_check(T, Potential::jacobian(), d.density, Kernel::uniform(T.k()));
    CHECK(std::fabs(v.lhs - est) <= 0.02);
  }
}

TEST_CASE("partition entropy input validation") {
  const GridDensity leb(1, 256);
  CHECK_THROWS_AS(partition_entropy_rate(leb, Kernel::uniform(2), pair_half(), 64, 8), ConfigError);
  CHECK_THROWS_AS(partition_entropy_rate(leb, Kernel::uniform(2), pair_half(), 16, 13), ConfigError);
  CHECK_THROWS_AS(partition_entropy_rate(leb, Kernel::constant({0.7, 0.3}), pair_half(), 8, 4),
                  ConfigError);
  CHECK_THROWS_AS(partition_entropy_rate(leb, Kernel::uniform(2), pair_half(), 16, 8, 100),
                  ResourceError);
}
