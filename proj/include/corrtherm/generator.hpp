#ifndef CORRTHERM_GENERATOR_HPP
#define CORRTHERM_GENERATOR_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "corrtherm/point.hpp"
#include "corrtherm/rational.hpp"

namespace corrtherm {

/// Root tolerance for inverse branches (d(f(x), y) after inversion).
inline constexpr double kTolRootCircle = 1e-12;
inline constexpr double kTolRootTorus = 1e-10;
/// Preimage dedup tolerance for the torus integer-offset scan.
inline constexpr double kTolDedup = 1e-10;

/// One expanding generator map on S^1 or T^m.
///
/// Kinds:
///   CircleLinear     x -> p*x + c            (mod 1), p >= 2
///   CirclePerturbed  x -> p*x + c + (eps/2pi)*sin(2pi x) (mod 1), |eps| < p-1
///   TorusLinear      x -> A*x + c            (mod 1), integer A, all |eig| > 1
///
/// Immutable after construction; all operations are pure.
class GeneratorMap {
 public:
  enum class Kind { CircleLinear, CirclePerturbed, TorusLinear };

  static GeneratorMap circle_linear(int p, double shift);
  static GeneratorMap circle_perturbed(int p, double shift, double eps);
  static GeneratorMap torus_linear(const std::vector<std::vector<std::int64_t>>& A,
                                   const std::vector<double>& shift);

  Kind kind() const { return kind_; }
  int dimension() const { return dim_; }
  /// Number of preimages of any point (= p on the circle, |det A| on the torus).
  int degree() const { return degree_; }

  Point eval(const Point& x) const;
  double jacobian(const Point& x) const;
  bool constant_jacobian() const { return kind_ != Kind::CirclePerturbed; }
  double min_jacobian() const;
  double max_jacobian() const;
  /// One-step expansion factor: inf |f'| on the circle, smallest singular
  /// value of A on the torus.
  double min_expansion() const { return min_expansion_; }

  /// All x with f(x) = y; exactly degree() points, each verified to tol_root.
  void inverse_branches(const Point& y, std::vector<Point>& out) const;
  std::vector<Point> inverse_branches(const Point& y) const;

  /// Inverse of the circle lift F (F(0) = c, F(1) = c + p, monotone) at
  /// target in [c, c+p]; circle kinds only. Interval preimages reduce to this.
  double inverse_lift(double target) const;
  double lift_base() const { return shift_; }  // F(0)

  /// Exact rational form is available for CircleLinear with a shift that is a
  /// small rational (drives the exact cylinder/interval machinery).
  bool has_rational_form() const { return rational_shift_.has_value(); }
  const Rational& rational_shift() const;
  int linear_slope() const { return p_; }

  /// Rational shift of each coordinate, for the exact Markov state (torus).
  const std::vector<Rational>& rational_shift_vector() const { return rational_shift_vec_; }
  bool has_rational_shift_vector() const { return !rational_shift_vec_.empty(); }
  std::int64_t matrix_entry(int i, int j) const { return A_[static_cast<std::size_t>(i) * dim_ + j]; }

  std::string describe() const;

 private:
  GeneratorMap() = default;
  Point eval_circle(double x) const;
  void inverse_branches_circle(double y, std::vector<Point>& out) const;
  void inverse_branches_torus(const Point& y, std::vector<Point>& out) const;
  double lift(double x) const;  // circle lift F with F(x+1) = F(x) + p

  Kind kind_ = Kind::CircleLinear;
  int dim_ = 1;
  int degree_ = 2;
  int p_ = 2;
  double shift_ = 0.0;
  double eps_ = 0.0;
  std::vector<std::int64_t> A_;        // row-major m x m (torus)
  std::vector<double> Ainv_;           // row-major inverse of A (torus)
  std::vector<double> c_;              // shift vector (torus)
  std::array<double, kMaxDim> box_lo_{}, box_hi_{};  // bounding box of A*[0,1]^m
  double min_expansion_ = 0.0;
  std::optional<Rational> rational_shift_;
  std::vector<Rational> rational_shift_vec_;
};

/// Midpoint-rule check of the change-of-variables identity
/// int sum_{x in f^-1(y)} 1/Jac(f(x)) dy = 1; returns the quadrature value.
/// total_points is split evenly across dimensions.
double degree_check(const GeneratorMap& f, int total_points = 1 << 14);

}  // namespace corrtherm

#endif
