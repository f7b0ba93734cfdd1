#ifndef CORRTHERM_KERNEL_HPP
#define CORRTHERM_KERNEL_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "corrtherm/grid_density.hpp"
#include "corrtherm/potential.hpp"
#include "corrtherm/rational.hpp"

namespace corrtherm {

/// Transition probability kernel supported by T: Q_x = sum_j P_{f_j}(x) delta_{f_j(x)}.
/// Weights are either constants or tabulated grid functions; row-stochastic
/// (sum_j P_j = 1 within 1e-12 at every grid point, preserved by linear
/// interpolation at evaluation points).
class Kernel {
 public:
  static Kernel uniform(int k);
  static Kernel constant(std::vector<double> weights);
  /// weights[j] tabulated on a uniform circle grid (dim 1).
  static Kernel tabulated(std::vector<std::vector<double>> weights);

  int k() const { return k_; }
  bool constant_weights() const { return tables_.empty(); }
  bool uniform_weights() const;
  double weight(int j, const Point& x) const;
  const std::vector<double>& constant_vector() const { return const_w_; }

 private:
  Kernel() = default;
  int k_ = 0;
  std::vector<double> const_w_;
  std::vector<std::vector<double>> tables_;
};

/// Density of the pushforward mu Q = sum_j (P_{f_j} mu) o f_j^{-1}, computed by
/// per-generator transfer of the weighted density; total mass is preserved up
/// to quadrature error.
GridDensity pushforward(const GridDensity& mu, const Kernel& kernel, const Correspondence& T);

/// Partition of [0,1)^m into congruent axis-aligned cells with rational
/// endpoints (cells_per_dim per dimension, row-major flat indexing).
struct Partition {
  int dim = 1;
  int cells_per_dim = 2;
  static Partition uniform(int dim, int cells_per_dim);
  int num_cells() const;
  /// Circle-cell endpoints [i/m, (i+1)/m) as exact rationals (dim 1).
  RatInterval circle_cell(int index) const;
  /// Cell index containing x.
  int locate(const Point& x) const;
};

/// A finite cylinder A_{w_1} x ... x A_{w_n} over a partition.
struct CylinderSpec {
  Partition partition;
  std::vector<int> word;  // cell indices, length n >= 1
};

inline constexpr int kMaxCylinderWord = 14;

/// mu Q^{[n-1]} (A_{w_1} x ... x A_{w_n}): sums over all k^{n-1} symbol words
/// the mu-measure of the iterated pullback intersection. Exact interval
/// arithmetic when every generator is rational circle-linear and the kernel is
/// uniform; otherwise quadrature at mu's grid resolution with kernel weights.
double cylinder_measure(const GridDensity& mu, const Kernel& kernel, const Correspondence& T,
                        const CylinderSpec& spec, int max_word = kMaxCylinderWord);

/// Exact-rational cylinder measure for mu = Leb, uniform kernel, rational
/// circle-linear generators.
Rational cylinder_measure_rational(const Correspondence& T, const CylinderSpec& spec,
                                   int max_word = kMaxCylinderWord);

/// One Markov trajectory: points x_0..x_steps and the symbols j_i drawn at
/// each x_i (so x_{i+1} = f_{j_i}(x_i) exactly).
struct MarkovSample {
  std::vector<Point> points;
  std::vector<int> symbols;
  std::uint64_t seed = 0;
};

/// Simulates the chain from x0: draw j ~ P_{f_j}(x_i) by inverse CDF on the
/// counter RNG stream (seed, stream), apply f_j. For integer-linear
/// correspondences with rational shifts the state is carried as an exact
/// fraction a/D (modular arithmetic), so forward evaluation is exact and the
/// orbit does not collapse onto dyadic points; doubles are emitted at output.
MarkovSample sample_markov(const Correspondence& T, const Kernel& kernel, const Point& x0,
                           int steps, std::uint64_t seed, std::uint64_t stream = 0);

/// Skew product sigma~({j_n}, x) = ({j_{n+1}}, f_{j_1}(x)) over a finite
/// symbol window.
struct SkewState {
  std::vector<int> symbols;  // remaining symbol window (1-based generator ids 0..k-1)
  Point x;
};

SkewState skew_product_step(const SkewState& s, const Correspondence& T);

/// pi~(s, x): the forward orbit (x, f_{j_1}x, f_{j_2}f_{j_1}x, ...) truncated
/// to depth points (depth <= symbols available + 1).
std::vector<Point> skew_projection(const SkewState& s, const Correspondence& T, int depth);

}  // namespace corrtherm

#endif
