#include "corrtherm/transfer.hpp"

#include <algorithm>
#include <cmath>

#include "corrtherm/parallel.hpp"

namespace corrtherm {

TransferTable::TransferTable(const Correspondence& T, const Potential& phi, int dim, int resolution)
    : dim_(dim), res_(resolution), entries_per_cell_(T.degree_sum()) {
  if (resolution < kMinTransferResolution)
    throw ConfigError("transfer: resolution must be >= " + std::to_string(kMinTransferResolution));
  phi.validate(T);
  slot_gen_.reserve(static_cast<std::size_t>(entries_per_cell_));
  for (int j = 0; j < T.k(); ++j)
    for (int b = 0; b < T.generator(j).degree(); ++b) slot_gen_.push_back(j);

  GridDensity shape(dim, resolution);  // for cell-center geometry
  const std::size_t cells = shape.size();
  pre_.resize(cells * static_cast<std::size_t>(entries_per_cell_));
  inv_jac_.resize(pre_.size());
  exp_phi_.resize(pre_.size());

  parallel_for(cells, [&](std::size_t cell) {
    const Point y = shape.cell_center(cell);
    std::vector<Point> branches;
    branches.reserve(static_cast<std::size_t>(T.max_degree()));
    std::size_t slot = cell * static_cast<std::size_t>(entries_per_cell_);
    for (int j = 0; j < T.k(); ++j) {
      branches.clear();
      T.generator(j).inverse_branches(y, branches);
      for (const Point& x : branches) {
        pre_[slot] = x;
        inv_jac_[slot] = 1.0 / T.generator(j).jacobian(x);
        exp_phi_[slot] = std::exp(phi.log_weight(T, j, x));
        ++slot;
      }
    }
  });
}

GridDensity TransferTable::apply(const GridDensity& g) const {
  if (g.dim() != dim_ || g.resolution() != res_) throw ConfigError("transfer: grid shape mismatch");
  GridDensity out(dim_, res_, 0.0);
  const std::size_t E = static_cast<std::size_t>(entries_per_cell_);
  parallel_for(g.size(), [&](std::size_t cell) {
    double s = 0.0;
    for (std::size_t e = 0; e < E; ++e) {
      const std::size_t slot = cell * E + e;
      s += exp_phi_[slot] * g.interpolate(pre_[slot]);
    }
    out[cell] = s;
  });
  return out;
}

GridDensity TransferTable::apply_kernel(const GridDensity& g, const Kernel& kernel) const {
  if (g.dim() != dim_ || g.resolution() != res_) throw ConfigError("transfer: grid shape mismatch");
  GridDensity out(dim_, res_, 0.0);
  const std::size_t E = static_cast<std::size_t>(entries_per_cell_);
  parallel_for(g.size(), [&](std::size_t cell) {
    double s = 0.0;
    for (std::size_t e = 0; e < E; ++e) {
      const std::size_t slot = cell * E + e;
      const Point& x = pre_[slot];
      s += kernel.weight(slot_gen_[e], x) * inv_jac_[slot] * g.interpolate(x);
    }
    out[cell] = s;
  });
  return out;
}

GridDensity apply_transfer(const Correspondence& T, const Potential& phi, const GridDensity& g) {
  return TransferTable(T, phi, g.dim(), g.resolution()).apply(g);
}

InvariantDensity invariant_density(const Correspondence& T, const Potential& phi, int resolution,
                                   double tol, int max_iter, const GridDensity* init) {
  const TransferTable table(T, phi, T.dimension(), resolution);
  GridDensity g = init != nullptr ? *init : GridDensity(T.dimension(), resolution);
  if (g.dim() != T.dimension() || g.resolution() != resolution)
    throw ConfigError("invariant_density: init grid shape mismatch");
  if (!(g.min_value() > 0.0)) throw ConfigError("invariant_density: init must be positive");
  g.normalize_mean();

  double change = std::numeric_limits<double>::infinity();
  int it = 0;
  for (; it < max_iter && change >= tol; ++it) {
    GridDensity next = table.apply(g);
    if (!(next.min_value() > 0.0))
      throw std::logic_error("transfer produced a non-positive density (interpolation bug)");
    next.normalize_mean();
    change = next.sup_diff(g);
    g = std::move(next);
  }
  if (change >= tol)
    throw DiagnosticError("invariant_density: no convergence in " + std::to_string(max_iter) +
                          " iterations (last sup change " + std::to_string(change) + ")");

  InvariantDensity out{std::move(g), 0.0, 0.0, it};
  const GridDensity Lg = table.apply(out.density);
  double ratio_sum = 0.0, sup_resid = 0.0;
  for (std::size_t i = 0; i < Lg.size(); ++i) ratio_sum += Lg[i] / out.density[i];
  out.eigenvalue = ratio_sum / static_cast<double>(Lg.size());
  for (std::size_t i = 0; i < Lg.size(); ++i)
    sup_resid = std::max(sup_resid, std::fabs(Lg[i] - out.eigenvalue * out.density[i]));
  out.residual = sup_resid / out.density.max_value();
  return out;
}

double check_kernel_invariance(const Correspondence& T, const GridDensity& Phi,
                               const Kernel& kernel) {
  if (kernel.k() != T.k()) throw ConfigError("kernel size does not match the correspondence");
  // the pushforward table needs per-generator 1/Jac weights only, so the
  // potential choice here does not matter beyond validation; Zero always fits
  const TransferTable table(T, Potential::zero(), Phi.dim(), Phi.resolution());
  const GridDensity pushed = table.apply_kernel(Phi, kernel);
  return pushed.l1_diff(Phi);
}

namespace {

// union of per-generator interval preimages of [a,b) on the circle: on each
// lift copy [a+i, b+i) the preimage is [F^-1(lo), F^-1(hi)) by monotonicity
std::vector<std::pair<double, double>> circle_preimage_union(const Correspondence& T, double a,
                                                             double b) {
  std::vector<std::pair<double, double>> pieces;
  for (int j = 0; j < T.k(); ++j) {
    const GeneratorMap& f = T.generator(j);
    const double base = f.lift_base();
    const double top = base + f.degree();
    for (double i = std::ceil(base - b); a + i < top; i += 1.0) {
      const double lo_t = std::max(a + i, base);
      const double hi_t = std::min(b + i, top);
      if (hi_t <= lo_t) continue;
      pieces.emplace_back(f.inverse_lift(lo_t), f.inverse_lift(hi_t));
    }
  }
  std::sort(pieces.begin(), pieces.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& p : pieces) {
    if (p.second <= p.first) continue;
    if (!merged.empty() && p.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, p.second);
    else
      merged.push_back(p);
  }
  return merged;
}

}  // namespace

double miller_akin_condition1(const Correspondence& T, const GridDensity& mu, int intervals) {
  if (intervals < 1) throw ConfigError("miller_akin_condition1: intervals must be >= 1");
  double worst = -std::numeric_limits<double>::infinity();
  if (T.dimension() == 1) {
    for (int i = 0; i < intervals; ++i) {
      const double a = static_cast<double>(i) / intervals;
      const double b = static_cast<double>(i + 1) / intervals;
      const double mu_A = mu.integrate_intervals({{a, b}});
      const double mu_pre = mu.integrate_intervals(circle_preimage_union(T, a, b));
      worst = std::max(worst, mu_A - mu_pre);
    }
    return worst;
  }
  // torus fallback: score cell centers of mu against the dyadic box family
  const int per_dim = std::max(1, static_cast<int>(std::llround(
                                      std::pow(static_cast<double>(intervals), 1.0 / T.dimension()))));
  const double vol = 1.0 / static_cast<double>(mu.size());
  std::vector<double> boxes(static_cast<std::size_t>(per_dim) * per_dim, 0.0);
  auto box_of = [&](const Point& p) {
    std::size_t flat = 0, stride = 1;
    for (int i = 0; i < T.dimension(); ++i) {
      flat += static_cast<std::size_t>(std::min(per_dim - 1, static_cast<int>(p[i] * per_dim))) * stride;
      stride *= static_cast<std::size_t>(per_dim);
    }
    return flat;
  };
  std::vector<double> mu_A(boxes.size(), 0.0), mu_pre(boxes.size(), 0.0);
  for (std::size_t c = 0; c < mu.size(); ++c) {
    const Point x = mu.cell_center(c);
    mu_A[box_of(x)] += mu[c] * vol;
    std::vector<bool> hit(boxes.size(), false);
    for (int j = 0; j < T.k(); ++j) {
      const std::size_t target = box_of(T.generator(j).eval(x));
      if (!hit[target]) hit[target] = true;
    }
    for (std::size_t bx = 0; bx < boxes.size(); ++bx)
      if (hit[bx]) mu_pre[bx] += mu[c] * vol;
  }
  for (std::size_t bx = 0; bx < boxes.size(); ++bx) worst = std::max(worst, mu_A[bx] - mu_pre[bx]);
  return worst;
}

}  // namespace corrtherm
