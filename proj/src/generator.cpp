#include "corrtherm/generator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace corrtherm {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::int64_t det_int(const std::vector<std::int64_t>& a, int m) {
  // cofactor expansion; m <= kMaxDim so this stays tiny
  if (m == 1) return a[0];
  std::int64_t det = 0;
  std::vector<std::int64_t> minor((m - 1) * (m - 1));
  for (int col = 0; col < m; ++col) {
    for (int i = 1; i < m; ++i) {
      int mj = 0;
      for (int j = 0; j < m; ++j) {
        if (j == col) continue;
        minor[(i - 1) * (m - 1) + mj++] = a[static_cast<std::size_t>(i) * m + j];
      }
    }
    const std::int64_t cof = a[col] * det_int(minor, m - 1);
    det += (col % 2 == 0) ? cof : -cof;
  }
  return det;
}
}  // namespace

GeneratorMap GeneratorMap::circle_linear(int p, double shift) {
  if (p < 2) throw ConfigError("circle_linear: p must be >= 2");
  GeneratorMap g;
  g.kind_ = Kind::CircleLinear;
  g.dim_ = 1;
  g.p_ = p;
  g.degree_ = p;
  g.shift_ = reduce_mod1(shift);
  g.min_expansion_ = p;
  try {
    g.rational_shift_ = Rational::from_double(g.shift_, 1'000'000, 1e-12);
  } catch (const NumericError&) {
    g.rational_shift_.reset();  // irrational-ish shift: exact modes unavailable
  }
  return g;
}

GeneratorMap GeneratorMap::circle_perturbed(int p, double shift, double eps) {
  if (p < 2) throw ConfigError("circle_perturbed: p must be >= 2");
  if (!(std::fabs(eps) < p - 1))
    throw ConfigError("circle_perturbed: |eps| < p-1 required for an expanding map");
  GeneratorMap g;
  g.kind_ = Kind::CirclePerturbed;
  g.dim_ = 1;
  g.p_ = p;
  g.degree_ = p;
  g.shift_ = reduce_mod1(shift);
  g.eps_ = eps;
  g.min_expansion_ = p - std::fabs(eps);
  return g;
}

GeneratorMap GeneratorMap::torus_linear(const std::vector<std::vector<std::int64_t>>& A,
                                        const std::vector<double>& shift) {
  const int m = static_cast<int>(A.size());
  if (m < 1 || m > kMaxDim) throw ConfigError("torus_linear: dimension out of range");
  if (static_cast<int>(shift.size()) != m) throw ConfigError("torus_linear: shift length != m");
  GeneratorMap g;
  g.kind_ = Kind::TorusLinear;
  g.dim_ = m;
  g.A_.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i) {
    if (static_cast<int>(A[i].size()) != m) throw ConfigError("torus_linear: A is not square");
    for (int j = 0; j < m; ++j) g.A_[static_cast<std::size_t>(i) * m + j] = A[i][j];
  }
  const std::int64_t det = det_int(g.A_, m);
  if (det == 0) throw ConfigError("torus_linear: singular matrix");
  g.degree_ = static_cast<int>(det < 0 ? -det : det);

  Eigen::MatrixXd Ad(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) Ad(i, j) = static_cast<double>(A[i][j]);
  const auto eigs = Ad.eigenvalues();
  for (int i = 0; i < m; ++i)
    if (std::abs(eigs[i]) <= 1.0 + 1e-12)
      throw ConfigError("torus_linear: all eigenvalues must have modulus > 1");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(Ad);
  g.min_expansion_ = svd.singularValues()(m - 1);

  const Eigen::MatrixXd inv = Ad.inverse();
  g.Ainv_.resize(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g.Ainv_[static_cast<std::size_t>(i) * m + j] = inv(i, j);

  g.c_ = shift;
  for (double& ci : g.c_) ci = reduce_mod1(ci);

  // bounding box of A*[0,1]^m: per row, sum negative/positive entries
  for (int i = 0; i < m; ++i) {
    double lo = 0.0, hi = 0.0;
    for (int j = 0; j < m; ++j) {
      const double a = static_cast<double>(A[i][j]);
      if (a < 0)
        lo += a;
      else
        hi += a;
    }
    g.box_lo_[i] = lo;
    g.box_hi_[i] = hi;
  }

  g.rational_shift_vec_.clear();
  try {
    for (double ci : g.c_) g.rational_shift_vec_.push_back(Rational::from_double(ci, 1'000'000, 1e-12));
  } catch (const NumericError&) {
    g.rational_shift_vec_.clear();
  }
  return g;
}

const Rational& GeneratorMap::rational_shift() const {
  if (!rational_shift_) throw ConfigError("generator has no exact rational form");
  return *rational_shift_;
}

double GeneratorMap::lift(double x) const {
  double v = p_ * x + shift_;
  if (kind_ == Kind::CirclePerturbed) v += eps_ / kTwoPi * std::sin(kTwoPi * x);
  return v;
}

Point GeneratorMap::eval_circle(double x) const { return Point(lift(x)); }

Point GeneratorMap::eval(const Point& x) const {
  if (x.dim() != dim_) throw ConfigError("eval: dimension mismatch");
  if (kind_ != Kind::TorusLinear) return eval_circle(x.x());
  std::array<double, kMaxDim> y{};
  for (int i = 0; i < dim_; ++i) {
    double v = c_[i];
    for (int j = 0; j < dim_; ++j) v += static_cast<double>(A_[static_cast<std::size_t>(i) * dim_ + j]) * x[j];
    y[i] = v;
  }
  return Point(std::span<const double>(y.data(), dim_));
}

double GeneratorMap::jacobian(const Point& x) const {
  switch (kind_) {
    case Kind::CircleLinear:
      return p_;
    case Kind::CirclePerturbed:
      return p_ + eps_ * std::cos(kTwoPi * x.x());
    case Kind::TorusLinear:
      return degree_;
  }
  return 0.0;
}

double GeneratorMap::min_jacobian() const {
  switch (kind_) {
    case Kind::CircleLinear:
      return p_;
    case Kind::CirclePerturbed:
      return p_ - std::fabs(eps_);
    case Kind::TorusLinear:
      return degree_;
  }
  return 0.0;
}

double GeneratorMap::max_jacobian() const {
  switch (kind_) {
    case Kind::CircleLinear:
      return p_;
    case Kind::CirclePerturbed:
      return p_ + std::fabs(eps_);
    case Kind::TorusLinear:
      return degree_;
  }
  return 0.0;
}

double GeneratorMap::inverse_lift(double target) const {
  if (kind_ == Kind::TorusLinear) throw ConfigError("inverse_lift: circle generators only");
  if (target <= shift_) return 0.0;
  if (target >= shift_ + p_) return 1.0;
  if (kind_ == Kind::CircleLinear) return (target - shift_) / p_;
  const double half = std::fabs(eps_) / kTwoPi;
  double lo = std::max(0.0, (target - shift_ - half) / p_);
  double hi = std::min(1.0, (target - shift_ + half) / p_);
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (lift(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int k = 0; k < 2; ++k) x -= (lift(x) - target) / (p_ + eps_ * std::cos(kTwoPi * x));
  return std::clamp(x, 0.0, 1.0);
}

void GeneratorMap::inverse_branches_circle(double y, std::vector<Point>& out) const {
  // lift sends [0,1) onto [shift, shift+p), so f(x)=y picks up exactly the p
  // integers i with y+i in that range
  const std::int64_t i0 = static_cast<std::int64_t>(std::ceil(shift_ - y));
  for (int b = 0; b < p_; ++b) {
    const double target = y + static_cast<double>(i0 + b);
    double x;
    if (kind_ == Kind::CircleLinear) {
      x = (target - shift_) / p_;
    } else {
      // monotone-branch bracket: p*x = target - shift - (eps/2pi) sin(2pi x)
      const double half = std::fabs(eps_) / kTwoPi;
      double lo = std::max(0.0, (target - shift_ - half) / p_);
      double hi = std::min(1.0, (target - shift_ + half) / p_);
      if (hi < lo) hi = lo;
      int iter = 0;
      const int max_iter = 200;
      while (hi - lo > 1e-12) {
        if (++iter > max_iter)
          throw NumericError("inverse branch " + std::to_string(b) + ": bisection stalled");
        const double mid = 0.5 * (lo + hi);
        if (lift(mid) < target)
          lo = mid;
        else
          hi = mid;
      }
      x = 0.5 * (lo + hi);
      for (int k = 0; k < 2; ++k) x -= (lift(x) - target) / (p_ + eps_ * std::cos(kTwoPi * x));
    }
    if (x < 0.0) x = 0.0;
    out.emplace_back(x);
  }
}

void GeneratorMap::inverse_branches_torus(const Point& y, std::vector<Point>& out) const {
  const int m = dim_;
  std::array<double, kMaxDim> b{};
  for (int i = 0; i < m; ++i) b[i] = y[i] - c_[i];
  // integer offsets q with A x = b + q solvable for x in [0,1)^m
  std::array<std::int64_t, kMaxDim> qlo{}, qhi{}, q{};
  for (int i = 0; i < m; ++i) {
    qlo[i] = static_cast<std::int64_t>(std::floor(box_lo_[i] - b[i])) - 1;
    qhi[i] = static_cast<std::int64_t>(std::ceil(box_hi_[i] - b[i])) + 1;
  }
  std::vector<Point> found;
  q = qlo;
  while (true) {
    std::array<double, kMaxDim> x{};
    for (int i = 0; i < m; ++i) {
      double v = 0.0;
      for (int j = 0; j < m; ++j)
        v += Ainv_[static_cast<std::size_t>(i) * m + j] * (b[j] + static_cast<double>(q[j]));
      x[i] = v;
    }
    bool inside = true;
    for (int i = 0; i < m; ++i)
      if (x[i] < -kTolDedup || x[i] >= 1.0 + kTolDedup) inside = false;
    if (inside) {
      Point cand(std::span<const double>(x.data(), m));
      if (distance(eval(cand), y) <= kTolRootTorus) {
        bool dup = false;
        for (const Point& p : found)
          if (distance(p, cand) < kTolDedup) dup = true;
        if (!dup) found.push_back(cand);
      }
    }
    int i = 0;
    for (; i < m; ++i) {
      if (++q[i] <= qhi[i]) break;
      q[i] = qlo[i];
    }
    if (i == m) break;
  }
  if (static_cast<int>(found.size()) != degree_)
    throw NumericError("torus preimage scan found " + std::to_string(found.size()) +
                       " points, expected " + std::to_string(degree_));
  out.insert(out.end(), found.begin(), found.end());
}

void GeneratorMap::inverse_branches(const Point& y, std::vector<Point>& out) const {
  if (y.dim() != dim_) throw ConfigError("inverse_branches: dimension mismatch");
  if (kind_ == Kind::TorusLinear)
    inverse_branches_torus(y, out);
  else
    inverse_branches_circle(y.x(), out);
}

std::vector<Point> GeneratorMap::inverse_branches(const Point& y) const {
  std::vector<Point> out;
  out.reserve(degree_);
  inverse_branches(y, out);
  return out;
}

std::string GeneratorMap::describe() const {
  char buf[160];
  switch (kind_) {
    case Kind::CircleLinear:
      std::snprintf(buf, sizeof buf, "circle_linear(p=%d, c=%g)", p_, shift_);
      break;
    case Kind::CirclePerturbed:
      std::snprintf(buf, sizeof buf, "circle_perturbed(p=%d, c=%g, eps=%g)", p_, shift_, eps_);
      break;
    case Kind::TorusLinear:
      std::snprintf(buf, sizeof buf, "torus_linear(m=%d, |det|=%d)", dim_, degree_);
      break;
  }
  return buf;
}

double degree_check(const GeneratorMap& f, int total_points) {
  const int m = f.dimension();
  const int per_dim = std::max(2, static_cast<int>(std::llround(
                                      std::pow(static_cast<double>(total_points), 1.0 / m))));
  std::int64_t cells = 1;
  for (int i = 0; i < m; ++i) cells *= per_dim;
  std::vector<Point> pre;
  double sum = 0.0;
  std::array<double, kMaxDim> coords{};
  for (std::int64_t flat = 0; flat < cells; ++flat) {
    std::int64_t rest = flat;
    for (int i = 0; i < m; ++i) {
      coords[i] = (static_cast<double>(rest % per_dim) + 0.5) / per_dim;
      rest /= per_dim;
    }
    const Point y(std::span<const double>(coords.data(), m));
    pre.clear();
    f.inverse_branches(y, pre);
    for (const Point& x : pre) sum += 1.0 / f.jacobian(x);
  }
  return sum / static_cast<double>(cells);
}

}  // namespace corrtherm
