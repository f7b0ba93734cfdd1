#include "corrtherm/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "corrtherm/numerics.hpp"

namespace corrtherm {

namespace {

/// Depth-first enumerator with per-level scratch buffers (no allocation in the
/// hot recursion). The subtree sum is a fixed-order tournament reduction, so
/// repeated runs produce bit-identical values.
class TreeWalker {
 public:
  TreeWalker(const Correspondence& T, const Potential& phi, int depth)
      : T_(T), phi_(phi), depth_(depth), scratch_(static_cast<std::size_t>(depth)) {
    for (auto& s : scratch_) s.reserve(static_cast<std::size_t>(T.max_degree()));
  }

  double sum(const Point& root) { return descend(root, depth_, 0.0); }

  void materialize(const Point& root, BackwardOrbitTree& out) {
    out_ = &out;
    sym_stack_.assign(static_cast<std::size_t>(depth_), 0);
    out.phi_n = descend(root, depth_, 0.0);
    out_ = nullptr;
  }

 private:
  double descend(const Point& x, int remaining, double logw) {
    if (remaining == 0) {
      if (out_ != nullptr) {
        TreeBranch b;
        b.symbols.assign(sym_stack_.rbegin(), sym_stack_.rend());  // (j_1 .. j_n)
        b.x1 = x;
        b.log_weight = logw;
        out_->branches.push_back(std::move(b));
      }
      return std::exp(logw);
    }
    auto& pre = scratch_[static_cast<std::size_t>(depth_ - remaining)];
    double s = 0.0;
    for (int j = 0; j < T_.k(); ++j) {
      pre.clear();
      T_.generator(j).inverse_branches(x, pre);
      for (const Point& xp : pre) {
        if (out_ != nullptr) sym_stack_[static_cast<std::size_t>(remaining - 1)] = static_cast<std::uint8_t>(j);
        s += descend(xp, remaining - 1, logw + phi_.log_weight(T_, j, xp));
      }
    }
    return s;
  }

  const Correspondence& T_;
  const Potential& phi_;
  int depth_;
  std::vector<std::vector<Point>> scratch_;
  std::vector<std::uint8_t> sym_stack_;
  BackwardOrbitTree* out_ = nullptr;
};

void check_budget(const Correspondence& T, int n, std::uint64_t budget, const char* what) {
  if (n < 1) throw ConfigError(std::string(what) + ": depth must be >= 1");
  if (backward_branch_count(T, n) > budget)
    throw ResourceError(std::string(what) + ": " + std::to_string(n) +
                        " levels exceed the branch budget (max admissible n = " +
                        std::to_string(max_depth_for_budget(T, budget)) + ")");
}

// log(sum_j deg_j * exp(phi_j)) for branch-constant potentials
double log_branch_weight_total(const Correspondence& T, const Potential& phi) {
  const Point origin = T.dimension() == 1 ? Point(0.0) : Point(std::vector<double>(T.dimension(), 0.0));
  double w = 0.0;
  for (int j = 0; j < T.k(); ++j)
    w += T.generator(j).degree() * std::exp(phi.log_weight(T, j, origin));
  return std::log(w);
}

}  // namespace

std::uint64_t backward_branch_count(const Correspondence& T, int n) {
  const std::uint64_t base = static_cast<std::uint64_t>(T.degree_sum());
  std::uint64_t count = 1;
  for (int i = 0; i < n; ++i) {
    if (count > std::numeric_limits<std::uint64_t>::max() / base / 2)
      return std::numeric_limits<std::uint64_t>::max();
    count *= base;
  }
  return count;
}

int max_depth_for_budget(const Correspondence& T, std::uint64_t budget) {
  int n = 0;
  while (backward_branch_count(T, n + 1) <= budget) ++n;
  return n;
}

BackwardOrbitTree build_backward_tree(const Correspondence& T, const Potential& phi,
                                      const Point& x, int n, std::uint64_t budget) {
  phi.validate(T);
  check_budget(T, n, std::min(budget, kMaterializeCap), "build_backward_tree");
  BackwardOrbitTree tree;
  tree.root = x;
  tree.depth = n;
  tree.branches.reserve(backward_branch_count(T, n));
  TreeWalker walker(T, phi, n);
  walker.materialize(x, tree);
  return tree;
}

double log_phi_n(const Correspondence& T, const Potential& phi, const Point& x, int n,
                 std::uint64_t budget) {
  phi.validate(T);
  if (n < 1) throw ConfigError("log_phi_n: depth must be >= 1");
  if (phi.constant_on_branches(T)) return n * log_branch_weight_total(T, phi);
  check_budget(T, n, budget, "phi_n");
  TreeWalker walker(T, phi, n);
  return std::log(walker.sum(x));
}

double phi_n(const Correspondence& T, const Potential& phi, const Point& x, int n,
             std::uint64_t budget) {
  return std::exp(log_phi_n(T, phi, x, n, budget));
}

PressureGrowth pressure_via_growth(const Correspondence& T, const Potential& phi, const Point& x,
                                   int n_min, int n_max, std::uint64_t budget) {
  if (n_min < 1 || n_max < n_min) throw ConfigError("pressure_via_growth: bad depth range");
  PressureGrowth out;
  for (int n = n_min; n <= n_max; ++n)
    out.sequence.emplace_back(n, log_phi_n(T, phi, x, n, budget) / n);
  out.estimate = extrapolate_inverse_n(out.sequence);
  return out;
}

double pressure_spanning_upper(const Correspondence& T, const Potential& phi, double epsilon,
                               int n, std::uint64_t budget) {
  phi.validate(T);
  // any net spacing up to 1/2 yields a valid spanning set; the bound is only
  // asymptotically tight for small epsilon
  if (!(epsilon > 0.0 && epsilon <= 0.5))
    throw ConfigError("pressure_spanning_upper: epsilon must be in (0, 1/2]");
  const int m = T.dimension();
  const int per_dim = static_cast<int>(std::ceil(1.0 / epsilon));
  std::uint64_t net_size = 1;
  for (int i = 0; i < m; ++i) net_size *= static_cast<std::uint64_t>(per_dim);

  if (phi.constant_on_branches(T)) {
    // Phi_n is root-independent: total = |net| * Phi_n
    return (std::log(static_cast<double>(net_size)) + n * log_branch_weight_total(T, phi)) / n;
  }
  if (backward_branch_count(T, n) > budget / net_size)
    throw ResourceError("pressure_spanning_upper: net x tree exceeds the branch budget");
  std::vector<double> logs;
  logs.reserve(net_size);
  std::array<double, kMaxDim> coords{};
  for (std::uint64_t flat = 0; flat < net_size; ++flat) {
    std::uint64_t rest = flat;
    for (int i = 0; i < m; ++i) {
      coords[i] = static_cast<double>(rest % per_dim) / per_dim;
      rest /= per_dim;
    }
    logs.push_back(log_phi_n(T, phi, Point(std::span<const double>(coords.data(), m)), n, budget));
  }
  return log_sum_exp(logs) / n;
}

double pressure_separated_lower(const Correspondence& T, const Potential& phi, const Point& x,
                                int n, std::uint64_t budget) {
  return log_phi_n(T, phi, x, n, budget) / n;
}

double gibbs_ratio(const Correspondence& T, const Potential& phi, int n, int probe_points,
                   std::uint64_t budget) {
  if (probe_points < 1) throw ConfigError("gibbs_ratio: need at least one probe");
  const int m = T.dimension();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  // probes on an equispaced lattice (probe_points per dimension)
  std::uint64_t total = 1;
  for (int i = 0; i < m; ++i) total *= static_cast<std::uint64_t>(probe_points);
  std::array<double, kMaxDim> coords{};
  for (std::uint64_t flat = 0; flat < total; ++flat) {
    std::uint64_t rest = flat;
    for (int i = 0; i < m; ++i) {
      coords[i] = static_cast<double>(rest % static_cast<std::uint64_t>(probe_points)) / probe_points;
      rest /= static_cast<std::uint64_t>(probe_points);
    }
    const double v = log_phi_n(T, phi, Point(std::span<const double>(coords.data(), m)), n, budget);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return std::exp(hi - lo);
}

}  // namespace corrtherm
