#ifndef CORRTHERM_POINT_HPP
#define CORRTHERM_POINT_HPP

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>

#include "corrtherm/errors.hpp"

namespace corrtherm {

/// Maximum ambient dimension supported (circle m = 1, torus m <= kMaxDim).
inline constexpr int kMaxDim = 4;

/// Reduce a coordinate mod 1 into [0,1). Exact 1.0 maps to 0.0.
inline double reduce_mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r = 0.0;  // x slightly below an integer rounds up
  return r;
}

/// Distance on the circle R/Z.
inline double circle_distance(double a, double b) {
  double d = std::fabs(a - b);
  return d <= 0.5 ? d : 1.0 - d;
}

/// A point of the flat torus [0,1)^m (m = 1 is the circle).
/// Coordinates are always kept reduced mod 1.
class Point {
 public:
  Point() : dim_(1) { c_[0] = 0.0; }
  explicit Point(double x) : dim_(1) { c_[0] = reduce_mod1(x); }
  Point(std::initializer_list<double> xs) : dim_(static_cast<int>(xs.size())) {
    check_dim(dim_);
    int i = 0;
    for (double x : xs) c_[i++] = reduce_mod1(x);
  }
  explicit Point(std::span<const double> xs) : dim_(static_cast<int>(xs.size())) {
    check_dim(dim_);
    for (int i = 0; i < dim_; ++i) c_[i] = reduce_mod1(xs[i]);
  }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double x() const { return c_[0]; }

  /// Torus metric: max over coordinates of the circle distance.
  friend double distance(const Point& a, const Point& b) {
    if (a.dim_ != b.dim_) throw ConfigError("point dimension mismatch");
    double d = 0.0;
    for (int i = 0; i < a.dim_; ++i) d = std::max(d, circle_distance(a.c_[i], b.c_[i]));
    return d;
  }

  std::string str() const;

 private:
  static void check_dim(int m) {
    if (m < 1 || m > kMaxDim) throw ConfigError("point dimension out of range");
  }
  std::array<double, kMaxDim> c_{};
  int dim_;
};

/// d_n on finite orbit segments: max over coordinates of the torus metric.
double orbit_distance_max(std::span<const Point> a, std::span<const Point> b);

/// Truncation depth for the weighted orbit metric (tail below double noise).
inline constexpr int kOrbitMetricDepth = 40;

/// d_omega on orbit segments: sum_i 2^{-i} d(x_i,y_i)/(1+d(x_i,y_i)), truncated
/// at kOrbitMetricDepth terms (truncation error < 2^-40).
double orbit_distance_weighted(std::span<const Point> a, std::span<const Point> b);

}  // namespace corrtherm

#endif
