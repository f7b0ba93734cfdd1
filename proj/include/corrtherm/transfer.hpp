#ifndef CORRTHERM_TRANSFER_HPP
#define CORRTHERM_TRANSFER_HPP

#include "corrtherm/grid_density.hpp"
#include "corrtherm/kernel.hpp"
#include "corrtherm/potential.hpp"

namespace corrtherm {

inline constexpr int kMinTransferResolution = 64;

/// Collocation table for the correspondence Ruelle operator: for every cell
/// center x the preimages under every generator branch together with 1/Jac and
/// exp(phi) weights. Building it once makes each power-iteration sweep a pure
/// gather, and keeps the preimage root-finding out of the iteration loop.
class TransferTable {
 public:
  TransferTable(const Correspondence& T, const Potential& phi, int dim, int resolution);

  /// L~_phi g at cell centers (unnormalized).
  GridDensity apply(const GridDensity& g) const;

  /// sum_j L_j(P_j * g): density of the pushforward of g m by the kernel
  /// (per-generator transfer with 1/Jac weights).
  GridDensity apply_kernel(const GridDensity& g, const Kernel& kernel) const;

  int resolution() const { return res_; }
  int dim() const { return dim_; }

 private:
  int dim_, res_, entries_per_cell_;
  std::vector<Point> pre_;        // [cell * entries + slot]
  std::vector<double> inv_jac_;   // 1/Jac at the preimage
  std::vector<double> exp_phi_;   // exp(phi(j, preimage))
  std::vector<int> slot_gen_;     // generator index per slot (cell-independent)
};

/// One application of the Ruelle operator L~_phi to g (unnormalized).
GridDensity apply_transfer(const Correspondence& T, const Potential& phi, const GridDensity& g);

struct InvariantDensity {
  GridDensity density;  // Phi, normalized to mean 1
  double eigenvalue = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// Power iteration g <- L~g / mean(L~g) until the sup-norm change drops below
/// tol; eigenvalue is the mean Rayleigh ratio over cells. Throws
/// DiagnosticError (with the last residual) on non-convergence.
InvariantDensity invariant_density(const Correspondence& T, const Potential& phi, int resolution,
                                   double tol, int max_iter, const GridDensity* init = nullptr);

/// L1 distance between the density of (Phi m) Q and Phi (Theorem B Step 1
/// check); ~0 for the uniform kernel at a converged density.
double check_kernel_invariance(const Correspondence& T, const GridDensity& Phi,
                               const Kernel& kernel);

/// Max over dyadic cells A of mu(A) - mu(T^{-1} A) (invariance condition;
/// nonpositive up to quadrature error for invariant mu). Exact interval
/// preimages on the circle, cell-center quadrature on the torus.
double miller_akin_condition1(const Correspondence& T, const GridDensity& mu, int intervals);

}  // namespace corrtherm

#endif
