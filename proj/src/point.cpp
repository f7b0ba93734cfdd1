#include "corrtherm/point.hpp"

#include <algorithm>
#include <cstdio>

namespace corrtherm {

std::string Point::str() const {
  char buf[32];
  std::string s = "(";
  for (int i = 0; i < dim_; ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", c_[i]);
    if (i) s += ", ";
    s += buf;
  }
  return s + ")";
}

double orbit_distance_max(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() != b.size()) throw ConfigError("orbit length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, distance(a[i], b[i]));
  return d;
}

double orbit_distance_weighted(std::span<const Point> a, std::span<const Point> b) {
  if (a.size() != b.size()) throw ConfigError("orbit length mismatch");
  const std::size_t n = std::min<std::size_t>(a.size(), kOrbitMetricDepth);
  double sum = 0.0, w = 0.5;
  for (std::size_t i = 0; i < n; ++i, w *= 0.5) {
    const double d = distance(a[i], b[i]);
    sum += w * d / (1.0 + d);
  }
  return sum;
}

}  // namespace corrtherm
