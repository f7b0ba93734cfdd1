#include "corrtherm/correspondence.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "corrtherm/rng.hpp"

namespace corrtherm {

namespace {
constexpr std::uint64_t kConstantsSeed = 0x5EED;

// golden-section minimization of a 1-d slice, bracket [a,b]
template <typename F>
double golden_min(F&& f, double a, double b, int iters = 40) {
  constexpr double kInvPhi = 0.6180339887498949;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return std::min(f1, f2);
}
}  // namespace

Correspondence::Correspondence(std::vector<GeneratorMap> generators) : gens_(std::move(generators)) {
  if (gens_.empty()) throw ConfigError("correspondence needs at least one generator");
  for (const auto& g : gens_)
    if (g.dimension() != gens_.front().dimension())
      throw ConfigError("all generators must share the same dimension");
}

int Correspondence::degree_sum() const {
  int s = 0;
  for (const auto& g : gens_) s += g.degree();
  return s;
}

int Correspondence::max_degree() const {
  int s = 0;
  for (const auto& g : gens_) s = std::max(s, g.degree());
  return s;
}

bool Correspondence::all_constant_jacobian() const {
  return std::all_of(gens_.begin(), gens_.end(),
                     [](const GeneratorMap& g) { return g.constant_jacobian(); });
}

bool Correspondence::exact_circle_linear() const {
  return dimension() == 1 && std::all_of(gens_.begin(), gens_.end(), [](const GeneratorMap& g) {
           return g.kind() == GeneratorMap::Kind::CircleLinear && g.has_rational_form();
         });
}

double Correspondence::coincidence_gap(int grid_resolution) const {
  if (k() < 2) return std::numeric_limits<double>::infinity();
  if (grid_resolution < (1 << 10)) throw ConfigError("coincidence_gap: grid_resolution >= 2^10");
  const int m = dimension();
  double overall = std::numeric_limits<double>::infinity();
  for (int j = 0; j < k(); ++j) {
    for (int jp = j + 1; jp < k(); ++jp) {
      const GeneratorMap& f = gens_[static_cast<std::size_t>(j)];
      const GeneratorMap& g = gens_[static_cast<std::size_t>(jp)];
      auto gap_at = [&](const Point& x) { return distance(f.eval(x), g.eval(x)); };
      // grid pass (capped per dimension on the torus; refinement tightens below)
      const int per_dim = m == 1 ? grid_resolution : std::min(grid_resolution, 512);
      std::int64_t cells = 1;
      for (int i = 0; i < m; ++i) cells *= per_dim;
      double best = std::numeric_limits<double>::infinity();
      std::array<double, kMaxDim> best_x{}, coords{};
      for (std::int64_t flat = 0; flat < cells; ++flat) {
        std::int64_t rest = flat;
        for (int i = 0; i < m; ++i) {
          coords[i] = static_cast<double>(rest % per_dim) / per_dim;
          rest /= per_dim;
        }
        const double v = gap_at(Point(std::span<const double>(coords.data(), m)));
        if (v < best) {
          best = v;
          best_x = coords;
        }
      }
      // one golden-section pass per coordinate around the grid minimizer
      const double h = 1.0 / per_dim;
      std::array<double, kMaxDim> cur = best_x;
      for (int i = 0; i < m; ++i) {
        const double refined = golden_min(
            [&](double t) {
              std::array<double, kMaxDim> c = cur;
              c[i] = t;
              return gap_at(Point(std::span<const double>(c.data(), m)));
            },
            cur[i] - h, cur[i] + h);
        best = std::min(best, refined);
      }
      overall = std::min(overall, best);
    }
  }
  return overall;
}

ExpansionConstants Correspondence::compute_constants() const {
  ExpansionConstants c;
  double u0 = std::numeric_limits<double>::infinity();
  for (const auto& g : gens_) u0 = std::min(u0, g.min_expansion());
  c.u0 = u0;
  c.lambda_tilde = u0;
  c.epsilon_star = coincidence_gap();
  c.coincidence_free = c.epsilon_star > kTolCoincidence;
  if (!c.coincidence_free) return c;  // only u0/epsilon_star are meaningful

  // 0.9 safety factor against the paper-side strict inequalities; the branch
  // spacing surrogate 1/(4 max deg) stands in for the local-homeomorphism radii
  const double cap = std::min(c.epsilon_star / 2.0, 1.0 / (4.0 * max_degree()));
  c.eta = 0.9 * cap / u0;

  // verify the one-step expansion inequality on sampled nearby pairs
  const int m = dimension();
  CounterRng rng(kConstantsSeed);
  for (int trial = 0; trial < 100'000; ++trial) {
    std::array<double, kMaxDim> xs{}, ys{};
    for (int i = 0; i < m; ++i) {
      xs[i] = rng.next_unit();
      ys[i] = xs[i] + (2.0 * rng.next_unit() - 1.0) * c.eta;
    }
    const Point x(std::span<const double>(xs.data(), m));
    const Point y(std::span<const double>(ys.data(), m));
    const double d = distance(x, y);
    if (d == 0.0 || d > c.eta) continue;
    double image_min = std::numeric_limits<double>::infinity();
    for (const auto& f : gens_)
      for (const auto& g : gens_) image_min = std::min(image_min, distance(f.eval(x), g.eval(y)));
    if (image_min < c.lambda_tilde * d * (1.0 - 1e-12))
      throw DiagnosticError("expansion verification failed at x=" + x.str() + " y=" + y.str() +
                            ": image gap " + std::to_string(image_min) + " < lambda*d " +
                            std::to_string(c.lambda_tilde * d) + " (eta too large)");
  }
  return c;
}

const ExpansionConstants& Correspondence::constants() const {
  auto cached = std::atomic_load_explicit(&constants_, std::memory_order_acquire);
  if (!cached) {
    cached = std::make_shared<const ExpansionConstants>(compute_constants());
    std::atomic_store_explicit(&constants_, cached, std::memory_order_release);
  }
  return *cached;
}

HolderFit Correspondence::holder_diagnostic(int samples, std::uint64_t seed) const {
  const ExpansionConstants& c = constants();
  if (!c.coincidence_free)
    throw ConfigError("holder_diagnostic requires a coincidence-free correspondence");
  const double xi = c.eta;
  const int m = dimension();
  CounterRng rng(seed);
  HolderFit fit;
  for (int s = 0; s < samples; ++s) {
    std::array<double, kMaxDim> xs{}, ys{};
    for (int i = 0; i < m; ++i) {
      xs[i] = rng.next_unit();
      ys[i] = xs[i] + (2.0 * rng.next_unit() - 1.0) * xi;
    }
    const Point x1(std::span<const double>(xs.data(), m));
    const Point y1(std::span<const double>(ys.data(), m));
    for (int j = 0; j < k(); ++j) {
      const Point x2 = gens_[static_cast<std::size_t>(j)].eval(x1);
      const double phix = -std::log(gens_[static_cast<std::size_t>(j)].jacobian(x1));
      for (int jp = 0; jp < k(); ++jp) {
        const Point y2 = gens_[static_cast<std::size_t>(jp)].eval(y1);
        const double d2 = std::max(distance(x1, y1), distance(x2, y2));
        if (d2 == 0.0 || d2 > xi) continue;
        const double phiy = -std::log(gens_[static_cast<std::size_t>(jp)].jacobian(y1));
        fit.constant = std::max(fit.constant, std::fabs(phiy - phix) / d2);
        ++fit.pairs_used;
      }
    }
  }
  return fit;
}

bool Correspondence::check_forward_expansive(int trials, std::uint64_t seed, double d0) const {
  const ExpansionConstants& c = constants();
  if (!c.coincidence_free)
    throw ConfigError("check_forward_expansive requires a coincidence-free correspondence");
  const int m = dimension();
  const int needed =
      static_cast<int>(std::ceil(std::log(c.eta / d0) / std::log(c.lambda_tilde))) + 2;
  const int depth = std::max(20, needed);
  CounterRng rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::array<double, kMaxDim> xs{}, ys{};
    for (int i = 0; i < m; ++i) {
      xs[i] = rng.next_unit();
      ys[i] = xs[i] + d0;
    }
    Point x(std::span<const double>(xs.data(), m));
    Point y(std::span<const double>(ys.data(), m));
    if (distance(x, y) == 0.0) continue;  // not a pair of distinct orbits
    bool separated = false;
    for (int step = 0; step < depth; ++step) {
      if (distance(x, y) > c.eta) {
        separated = true;
        break;
      }
      const int j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(k())));
      x = gens_[static_cast<std::size_t>(j)].eval(x);
      y = gens_[static_cast<std::size_t>(j)].eval(y);
    }
    if (!separated) return false;
  }
  return true;
}

}  // namespace corrtherm
