#ifndef CORRTHERM_CORRESPONDENCE_HPP
#define CORRTHERM_CORRESPONDENCE_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <vector>

#include "corrtherm/generator.hpp"
#include "corrtherm/point.hpp"

namespace corrtherm {

/// Gaps below this are classified as coincidences (floating grids cannot
/// certify smaller positive infima).
inline constexpr double kTolCoincidence = 1e-9;

/// Expansion/separation constants of a correspondence.
struct ExpansionConstants {
  double epsilon_star = 0.0;  // min pairwise generator gap; +inf for k = 1
  double eta = 0.0;           // distance-expanding radius
  double lambda_tilde = 0.0;  // one-step expansion factor (= u0)
  double u0 = 0.0;            // min over generators of the one-step expansion
  bool coincidence_free = false;
};

/// Result of the local Hölder fit of the Jacobian potential.
struct HolderFit {
  double alpha = 1.0;  // implemented generators are C^2, so alpha = 1 is fitted
  double constant = 0.0;
  int pairs_used = 0;
};

/// T(x) = {f_1(x), ..., f_k(x)} for k generators of equal dimension.
/// Immutable after construction; the constants are computed once on demand
/// (idempotent, so a benign race recomputes identical values).
class Correspondence {
 public:
  explicit Correspondence(std::vector<GeneratorMap> generators);

  int k() const { return static_cast<int>(gens_.size()); }
  int dimension() const { return gens_.front().dimension(); }
  const GeneratorMap& generator(int j) const { return gens_[static_cast<std::size_t>(j)]; }
  const std::vector<GeneratorMap>& generators() const { return gens_; }
  int degree_sum() const;
  int max_degree() const;
  bool all_constant_jacobian() const;
  /// True when every generator is circle-linear with an exact rational shift.
  bool exact_circle_linear() const;

  /// Grid lower bound (with one golden-section refinement) for
  /// eps* = min_{j != j'} inf_x d(f_j(x), f_{j'}(x)); +inf when k = 1.
  double coincidence_gap(int grid_resolution = 1 << 12) const;

  /// Expansion constants; verifies the one-step expansion inequality on 1e5
  /// random pairs with d(x,y) <= eta and throws DiagnosticError with the
  /// witness pair on failure.
  const ExpansionConstants& constants() const;

  /// Fits the smallest C with |phi(y1,y2)-phi(x1,x2)| <= C*d_2 over sampled
  /// nearby orbit pairs (Jacobian potential; diagnostic, not a proof).
  HolderFit holder_diagnostic(int samples, std::uint64_t seed) const;

  /// Confirms nearby same-symbol orbits separate beyond eta within
  /// ceil(log_lambda(eta/d0)) + 2 steps; false return is a finding.
  bool check_forward_expansive(int trials, std::uint64_t seed, double d0 = 1e-6) const;

 private:
  ExpansionConstants compute_constants() const;
  std::vector<GeneratorMap> gens_;
  mutable std::shared_ptr<const ExpansionConstants> constants_;
};

}  // namespace corrtherm

#endif
