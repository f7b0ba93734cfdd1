#include "corrtherm/numerics.hpp"

#include <algorithm>

namespace corrtherm {

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() <= 8) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

double log_sum_exp(std::span<const double> logs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double l : logs) m = std::max(m, l);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double l : logs) s += std::exp(l - m);
  return m + std::log(s);
}

double extrapolate_inverse_n(std::span<const std::pair<int, double>> seq) {
  if (seq.empty()) return 0.0;
  const std::size_t start = seq.size() / 2;
  const std::size_t count = seq.size() - start;
  if (count < 2) return seq.back().second;
  // normal equations for value = a + b*(1/n)
  double s1 = 0, sx = 0, sxx = 0, sy = 0, sxy = 0;
  for (std::size_t i = start; i < seq.size(); ++i) {
    const double x = 1.0 / seq[i].first;
    const double y = seq[i].second;
    s1 += 1.0;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
  }
  const double det = s1 * sxx - sx * sx;
  if (det == 0.0) return seq.back().second;
  return (sy * sxx - sx * sxy) / det;
}

}  // namespace corrtherm
