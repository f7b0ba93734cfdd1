#ifndef CORRTHERM_ENTROPY_HPP
#define CORRTHERM_ENTROPY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "corrtherm/kernel.hpp"

namespace corrtherm {

inline constexpr std::uint64_t kDefaultWordBudget = 10'000'000;

/// H_n/n for n = 1..n_max, where H_n is the entropy of the n-fold partition
/// words under mu Q^{[n-1]} (positive-measure words only; exact interval
/// enumeration for rational circle-linear generators, quadrature otherwise).
/// Requires partition_size * k <= 64 and n_max <= 12.
std::vector<std::pair<int, double>> partition_entropy_rate(
    const GridDensity& mu, const Kernel& kernel, const Correspondence& T, int partition_size,
    int n_max, std::uint64_t word_budget = kDefaultWordBudget);

/// (1/k) sum_j int log Jac(f_j) d(mu): the fiber entropy of the skew product
/// over the uniform Bernoulli base, by midpoint quadrature on mu's grid.
double fiber_entropy(const Correspondence& T, const GridDensity& mu);

/// log k + fiber_entropy: the kernel entropy of the uniform kernel at mu.
double kernel_entropy_analytic(const Correspondence& T, const GridDensity& mu);

struct VariationalResult {
  double lhs = 0.0;            // entropy_term + potential_term
  double rhs = 0.0;            // log k
  double gap = 0.0;            // rhs - lhs (signed)
  double entropy_term = 0.0;   // h_mu(Q) assembled analytically
  double potential_term = 0.0; // int int phi dQ dmu
};

/// Checks h_mu(Q) + int int phi dQ dmu against log k. mu must be
/// kernel-invariant (pushforward discrepancy <= 1e-6); constant-weight kernels
/// only (the entropy term uses the Bernoulli-base skew-product assembly).
VariationalResult variational_check(const Correspondence& T, const Potential& phi,
                                    const GridDensity& mu, const Kernel& kernel);

struct EntropyReport {
  std::vector<std::pair<int, double>> h_partition;  // (n, H_n/n)
  double h_extrapolated = 0.0;                      // a + b/n fit of the sequence
  double h_analytic = 0.0;
  double fiber = 0.0;
  double shift_entropy = 0.0;  // log k
  double variational_lhs = 0.0;
  double pressure_rhs = 0.0;
};

}  // namespace corrtherm

#endif
