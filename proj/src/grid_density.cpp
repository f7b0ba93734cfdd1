#include "corrtherm/grid_density.hpp"

#include <algorithm>
#include <cmath>

#include "corrtherm/numerics.hpp"

namespace corrtherm {

GridDensity::GridDensity(int dim, int resolution, double fill) : dim_(dim), res_(resolution) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("grid density: dimension out of range");
  if (resolution < 2) throw ConfigError("grid density: resolution must be >= 2");
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) n *= static_cast<std::size_t>(resolution);
  values_.assign(n, fill);
}

Point GridDensity::cell_center(std::size_t flat) const {
  std::array<double, kMaxDim> c{};
  std::size_t rest = flat;
  for (int i = 0; i < dim_; ++i) {
    c[i] = (static_cast<double>(rest % static_cast<std::size_t>(res_)) + 0.5) / res_;
    rest /= static_cast<std::size_t>(res_);
  }
  return Point(std::span<const double>(c.data(), dim_));
}

double GridDensity::interpolate(const Point& x) const {
  if (x.dim() != dim_) throw ConfigError("interpolate: dimension mismatch");
  // multilinear over the 2^m surrounding cell centers, periodic
  std::array<int, kMaxDim> base{};
  std::array<double, kMaxDim> frac{};
  for (int i = 0; i < dim_; ++i) {
    const double t = x[i] * res_ - 0.5;
    const double fl = std::floor(t);
    base[i] = static_cast<int>(fl);
    frac[i] = t - fl;
  }
  double out = 0.0;
  for (int corner = 0; corner < (1 << dim_); ++corner) {
    double w = 1.0;
    std::size_t flat = 0, stride = 1;
    for (int i = 0; i < dim_; ++i) {
      const int bit = (corner >> i) & 1;
      w *= bit ? frac[i] : 1.0 - frac[i];
      int idx = (base[i] + bit) % res_;
      if (idx < 0) idx += res_;
      flat += static_cast<std::size_t>(idx) * stride;
      stride *= static_cast<std::size_t>(res_);
    }
    out += w * values_[flat];
  }
  return out;
}

double GridDensity::mean() const { return pairwise_sum(values_) / static_cast<double>(values_.size()); }

void GridDensity::normalize_mean() {
  const double m = mean();
  if (!(m > 0.0)) throw NumericError("density mean is not positive");
  for (double& v : values_) v /= m;
}

double GridDensity::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double GridDensity::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

double GridDensity::sup_diff(const GridDensity& other) const {
  if (other.values_.size() != values_.size()) throw ConfigError("sup_diff: shape mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i)
    d = std::max(d, std::fabs(values_[i] - other.values_[i]));
  return d;
}

double GridDensity::l1_diff(const GridDensity& other) const {
  if (other.values_.size() != values_.size()) throw ConfigError("l1_diff: shape mismatch");
  std::vector<double> diffs(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i)
    diffs[i] = std::fabs(values_[i] - other.values_[i]);
  return pairwise_sum(diffs) / static_cast<double>(values_.size());
}

double GridDensity::integrate_intervals(const std::vector<std::pair<double, double>>& intervals) const {
  if (dim_ != 1) throw ConfigError("integrate_intervals: circle densities only");
  double total = 0.0;
  for (const auto& [lo, hi] : intervals) {
    if (!(hi > lo)) continue;
    const int c_lo = std::clamp(static_cast<int>(std::floor(lo * res_)), 0, res_ - 1);
    const int c_hi = std::clamp(static_cast<int>(std::ceil(hi * res_)), 1, res_);
    for (int c = c_lo; c < c_hi; ++c) {
      const double a = std::max(lo, static_cast<double>(c) / res_);
      const double b = std::min(hi, static_cast<double>(c + 1) / res_);
      if (b > a) total += values_[static_cast<std::size_t>(c)] * (b - a);
    }
  }
  return total;
}

bool GridDensity::is_constant_one(double tol) const {
  for (double v : values_)
    if (std::fabs(v - 1.0) > tol) return false;
  return true;
}

}  // namespace corrtherm
