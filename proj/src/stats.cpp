#include "corrtherm/stats.hpp"

#include <algorithm>
#include <cmath>

#include "corrtherm/errors.hpp"

namespace corrtherm {

double ks_statistic_uniform(std::vector<double> samples) {
  if (samples.empty()) throw ConfigError("ks_statistic_uniform: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double di = static_cast<double>(i);
    d = std::max(d, std::max((di + 1.0) / n - samples[i], samples[i] - di / n));
  }
  return d;
}

double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

}  // namespace corrtherm
