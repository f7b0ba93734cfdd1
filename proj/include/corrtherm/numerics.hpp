#ifndef CORRTHERM_NUMERICS_HPP
#define CORRTHERM_NUMERICS_HPP

#include <cmath>
#include <span>
#include <utility>
#include <vector>

namespace corrtherm {

/// Pairwise (tournament) summation; deterministic for a fixed input order and
/// O(eps log n) relative error.
double pairwise_sum(std::span<const double> xs);

/// log(sum exp(l_i)) without overflow.
double log_sum_exp(std::span<const double> logs);

/// Least-squares fit of value ~ a + b/n over the top half of the sequence
/// (by n); returns a. Falls back to the last value for short sequences.
double extrapolate_inverse_n(std::span<const std::pair<int, double>> seq);

}  // namespace corrtherm

#endif
