#ifndef CORRTHERM_POTENTIAL_HPP
#define CORRTHERM_POTENTIAL_HPP

#include <string>
#include <vector>

#include "corrtherm/correspondence.hpp"

namespace corrtherm {

/// Potential phi(x1, x2) on pairs with x2 = f_j(x1), evaluated as phi(j, x1).
///
///   Jacobian         -log Jac(f_j(x1)); needs a coincidence-free T so that
///                    phi is a single-valued function of (x1, x2)
///   TorusMeasurable  -log|det A_j| away from the coincidence set E, and
///                    -min_j log|det A_j| within tol of E; constant-Jacobian
///                    generators only
///   Zero             0 (pressure reduces to topological entropy)
///   Custom           tabulated per branch index on a uniform circle grid,
///                    linearly interpolated
class Potential {
 public:
  enum class Kind { Jacobian, TorusMeasurable, Zero, Custom };

  static Potential jacobian() { return Potential(Kind::Jacobian); }
  static Potential torus_measurable() { return Potential(Kind::TorusMeasurable); }
  static Potential zero() { return Potential(Kind::Zero); }
  static Potential custom(std::vector<std::vector<double>> table_per_branch);
  static Potential parse(const std::string& name);

  Kind kind() const { return kind_; }
  std::string name() const;

  /// log-weight phi(x1, f_j(x1)).
  double log_weight(const Correspondence& T, int j, const Point& x1) const;

  /// True when phi(j, .) is constant for every j (enables closed forms).
  bool constant_on_branches(const Correspondence& T) const;

  /// Throws ConfigError when T does not satisfy this potential's hypotheses.
  void validate(const Correspondence& T) const;

 private:
  explicit Potential(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<std::vector<double>> table_;  // Custom: [branch][cell]
};

/// True when x lies within tol of the coincidence set E (some pair of
/// generators nearly agrees at x).
bool near_coincidence(const Correspondence& T, const Point& x, double tol = kTolCoincidence);

}  // namespace corrtherm

#endif
