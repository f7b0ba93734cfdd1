#ifndef CORRTHERM_GRID_DENSITY_HPP
#define CORRTHERM_GRID_DENSITY_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "corrtherm/point.hpp"

namespace corrtherm {

/// Piecewise-constant density on a uniform grid over [0,1)^m, with periodic
/// multilinear interpolation between cell centers for collocation reads.
class GridDensity {
 public:
  GridDensity(int dim, int resolution, double fill = 1.0);
  static GridDensity uniform(int dim, int resolution) { return GridDensity(dim, resolution); }

  int dim() const { return dim_; }
  int resolution() const { return res_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

  Point cell_center(std::size_t flat) const;
  double interpolate(const Point& x) const;

  double mean() const;
  /// Scale so the mean (= integral over the unit volume) is 1.
  void normalize_mean();
  double min_value() const;
  double max_value() const;

  double sup_diff(const GridDensity& other) const;
  /// L1 distance of the piecewise-constant densities.
  double l1_diff(const GridDensity& other) const;

  /// Integral of the piecewise-constant density over a union of circle
  /// intervals (dim 1 only); intervals must lie within [0,1).
  double integrate_intervals(const std::vector<std::pair<double, double>>& intervals) const;

  bool is_constant_one(double tol = 0.0) const;

 private:
  int dim_, res_;
  std::vector<double> values_;
};

}  // namespace corrtherm

#endif
