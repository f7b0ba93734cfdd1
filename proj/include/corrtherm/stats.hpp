#ifndef CORRTHERM_STATS_HPP
#define CORRTHERM_STATS_HPP

#include <vector>

namespace corrtherm {

/// Two-sided Kolmogorov-Smirnov statistic of samples in [0,1) against the
/// uniform CDF.
double ks_statistic_uniform(std::vector<double> samples);

/// 1% critical value of the one-sample KS statistic, 1.63/sqrt(n).
double ks_critical_1pct(std::size_t n);

}  // namespace corrtherm

#endif
