#ifndef CORRTHERM_ORBITS_HPP
#define CORRTHERM_ORBITS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "corrtherm/potential.hpp"

namespace corrtherm {

/// Streaming enumeration budget (leaves) and materialization cap.
inline constexpr std::uint64_t kDefaultBranchBudget = 100'000'000;
inline constexpr std::uint64_t kMaterializeCap = 1'000'000;

/// One backward n-orbit (x_1, ..., x_n, x): symbol word (j_1..j_n), the
/// deepest preimage x_1, and the accumulated log-weight S_n(phi).
struct TreeBranch {
  std::vector<std::uint8_t> symbols;
  Point x1;
  double log_weight;
};

/// All backward n-orbits terminating at root; branch count is exactly
/// (sum_j degree_j)^n.
struct BackwardOrbitTree {
  Point root;
  int depth = 0;
  std::vector<TreeBranch> branches;
  double phi_n = 0.0;  // sum of exp(log_weight) in enumeration order
};

/// (sum_j degree_j)^n, saturating at 2^63-1.
std::uint64_t backward_branch_count(const Correspondence& T, int n);

/// Largest depth whose full tree fits the budget.
int max_depth_for_budget(const Correspondence& T, std::uint64_t budget);

/// Materialized tree (throws ResourceError above min(budget, kMaterializeCap)).
BackwardOrbitTree build_backward_tree(const Correspondence& T, const Potential& phi,
                                      const Point& x, int n,
                                      std::uint64_t budget = kDefaultBranchBudget);

/// log Phi_n(x). Constant-Jacobian generators with a branch-constant potential
/// use the exact closed form (sum_j deg_j e^{phi_j})^n and skip enumeration
/// (so the budget only applies when pointwise evaluation is required).
double log_phi_n(const Correspondence& T, const Potential& phi, const Point& x, int n,
                 std::uint64_t budget = kDefaultBranchBudget);

/// Phi_n(x) = sum over backward n-orbits of exp(S_n phi).
double phi_n(const Correspondence& T, const Potential& phi, const Point& x, int n,
             std::uint64_t budget = kDefaultBranchBudget);

struct PressureGrowth {
  std::vector<std::pair<int, double>> sequence;  // (n, log Phi_n / n)
  double estimate = 0.0;                         // a + b/n extrapolation
};

/// (1/n) log Phi_n(x) for n in [n_min, n_max] plus the extrapolated limit;
/// estimates P(T, phi) (= log k for the Jacobian potential).
PressureGrowth pressure_via_growth(const Correspondence& T, const Potential& phi, const Point& x,
                                   int n_min, int n_max,
                                   std::uint64_t budget = kDefaultBranchBudget);

/// Upper estimator: (1/n) log of the branch-weight total over the union of
/// backward trees rooted at an epsilon-net (a (d_{n+1}, eps)-spanning set).
double pressure_spanning_upper(const Correspondence& T, const Potential& phi, double epsilon,
                               int n, std::uint64_t budget = kDefaultBranchBudget);

/// Lower estimator: (1/n) log Phi_n(x) (a single-root tree is eta-separated).
double pressure_separated_lower(const Correspondence& T, const Potential& phi, const Point& x,
                                int n, std::uint64_t budget = kDefaultBranchBudget);

/// max/min of Phi_n over equispaced probe roots (empirical Gibbs constant).
double gibbs_ratio(const Correspondence& T, const Potential& phi, int n, int probe_points,
                   std::uint64_t budget = kDefaultBranchBudget);

}  // namespace corrtherm

#endif
