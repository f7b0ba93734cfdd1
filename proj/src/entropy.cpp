#include "corrtherm/entropy.hpp"

#include <cmath>
#include <unordered_map>

namespace corrtherm {

namespace {

struct ComposedLinear {
  std::int64_t slope = 1;
  Rational offset = Rational(0);
};

// One surviving (symbol word, pullback set) thread of a cell word.
struct Thread {
  ComposedLinear g;
  IntervalSet set;
};

double mu_of_set(const GridDensity& mu, const IntervalSet& S, bool leb) {
  if (leb) return S.measure().to_double();
  std::vector<std::pair<double, double>> ivs;
  ivs.reserve(S.size());
  for (const auto& iv : S.parts()) ivs.emplace_back(iv.lo.to_double(), iv.hi.to_double());
  return mu.integrate_intervals(ivs);
}

// Exact-mode DFS over cell words; threads carry per-symbol-word pullback sets.
class ExactEntropyWalker {
 public:
  ExactEntropyWalker(const GridDensity& mu, const Correspondence& T, int m, int n_max,
                     std::uint64_t budget)
      : mu_(mu), T_(T), n_max_(n_max), budget_(budget), leb_(mu.is_constant_one()) {
    for (int i = 0; i < m; ++i)
      cells_.emplace_back(IntervalSet(RatInterval{Rational(i, m), Rational(i + 1, m)}));
    H_.assign(static_cast<std::size_t>(n_max) + 1, 0.0);
    inv_k_pow_.assign(static_cast<std::size_t>(n_max) + 1, 1.0);
    for (int n = 1; n <= n_max; ++n) inv_k_pow_[static_cast<std::size_t>(n)] = inv_k_pow_[static_cast<std::size_t>(n - 1)] / T.k();
  }

  std::vector<std::pair<int, double>> run() {
    for (const auto& cell : cells_) {
      std::vector<Thread> threads{Thread{ComposedLinear{}, cell}};
      if (!threads.front().set.empty()) descend(1, threads);
    }
    std::vector<std::pair<int, double>> out;
    for (int n = 1; n <= n_max_; ++n) out.emplace_back(n, H_[static_cast<std::size_t>(n)] / n);
    return out;
  }

 private:
  void descend(int depth, const std::vector<Thread>& threads) {
    double mass = 0.0;
    for (const auto& th : threads) mass += mu_of_set(mu_, th.set, leb_);
    const double p = mass * inv_k_pow_[static_cast<std::size_t>(depth - 1)];
    if (p <= 0.0) return;
    if (++words_ > budget_)
      throw ResourceError("partition_entropy_rate: surviving word count exceeds the budget");
    H_[static_cast<std::size_t>(depth)] -= p * std::log(p);
    if (depth == n_max_) return;
    std::vector<Thread> next;
    for (std::size_t ci = 0; ci < cells_.size(); ++ci) {
      next.clear();
      for (const auto& th : threads) {
        for (int j = 0; j < T_.k(); ++j) {
          const GeneratorMap& f = T_.generator(j);
          ComposedLinear g2{f.linear_slope() * th.g.slope,
                            (Rational(f.linear_slope()) * th.g.offset + f.rational_shift()).mod1()};
          IntervalSet s2 = th.set.intersect(cells_[ci].pullback_linear(g2.slope, g2.offset));
          if (!s2.empty()) next.push_back(Thread{g2, std::move(s2)});
        }
      }
      if (!next.empty()) descend(depth + 1, next);
    }
  }

  const GridDensity& mu_;
  const Correspondence& T_;
  int n_max_;
  std::uint64_t budget_;
  bool leb_;
  std::vector<IntervalSet> cells_;
  std::vector<double> H_;
  std::vector<double> inv_k_pow_;
  std::uint64_t words_ = 0;
};

}  // namespace

std::vector<std::pair<int, double>> partition_entropy_rate(const GridDensity& mu,
                                                           const Kernel& kernel,
                                                           const Correspondence& T,
                                                           int partition_size, int n_max,
                                                           std::uint64_t word_budget) {
  if (partition_size < 2) throw ConfigError("partition_entropy_rate: partition_size >= 2");
  if (partition_size * T.k() > 64)
    throw ConfigError("partition_entropy_rate: partition_size * k must be <= 64");
  if (n_max < 1 || n_max > 12) throw ConfigError("partition_entropy_rate: n_max in [1, 12]");
  if (!kernel.uniform_weights())
    throw ConfigError("partition_entropy_rate: uniform kernel required");

  if (T.exact_circle_linear() && mu.dim() == 1) {
    ExactEntropyWalker walker(mu, T, partition_size, n_max, word_budget);
    return walker.run();
  }

  // quadrature mode: forward-walk every mu cell, histogram cell words per depth
  const Partition part = Partition::uniform(T.dimension(), partition_size);
  std::vector<std::unordered_map<std::uint64_t, double>> hist(static_cast<std::size_t>(n_max) + 1);
  const double cell_vol = 1.0 / static_cast<double>(mu.size());
  const double inv_k = 1.0 / T.k();
  std::uint64_t words = 0;
  for (std::size_t c = 0; c < mu.size(); ++c) {
    const Point x0 = mu.cell_center(c);
    const double base = mu[c] * cell_vol;
    if (base <= 0.0) continue;
    auto rec = [&](auto&& self, int depth, const Point& x, double w, std::uint64_t key) -> void {
      key = key * static_cast<std::uint64_t>(part.num_cells()) +
            static_cast<std::uint64_t>(part.locate(x));
      auto [it, fresh] = hist[static_cast<std::size_t>(depth)].try_emplace(key, 0.0);
      if (fresh && ++words > word_budget)
        throw ResourceError("partition_entropy_rate: surviving word count exceeds the budget");
      it->second += w;
      if (depth == n_max) return;
      for (int j = 0; j < T.k(); ++j)
        self(self, depth + 1, T.generator(j).eval(x), w * inv_k, key);
    };
    rec(rec, 1, x0, base, 0);
  }
  std::vector<std::pair<int, double>> out;
  for (int n = 1; n <= n_max; ++n) {
    double H = 0.0;
    for (const auto& [key, p] : hist[static_cast<std::size_t>(n)])
      if (p > 0.0) H -= p * std::log(p);
    out.emplace_back(n, H / n);
  }
  return out;
}

double fiber_entropy(const Correspondence& T, const GridDensity& mu) {
  if (mu.dim() != T.dimension()) throw ConfigError("fiber_entropy: dimension mismatch");
  double acc = 0.0;
  for (int j = 0; j < T.k(); ++j) {
    double sum = 0.0;
    for (std::size_t c = 0; c < mu.size(); ++c) {
      const Point x = mu.cell_center(c);
      sum += std::log(T.generator(j).jacobian(x)) * mu[c];
    }
    acc += sum / static_cast<double>(mu.size());
  }
  return acc / T.k();
}

double kernel_entropy_analytic(const Correspondence& T, const GridDensity& mu) {
  return std::log(static_cast<double>(T.k())) + fiber_entropy(T, mu);
}

VariationalResult variational_check(const Correspondence& T, const Potential& phi,
                                    const GridDensity& mu, const Kernel& kernel) {
  phi.validate(T);
  if (!kernel.constant_weights())
    throw ConfigError("variational_check: constant-weight kernels only");
  const double discrepancy = pushforward(mu, kernel, T).l1_diff(mu);
  if (discrepancy > 1e-6)
    throw ConfigError("variational_check: mu is not kernel-invariant (pushforward discrepancy " +
                      std::to_string(discrepancy) + ")");

  VariationalResult out;
  const auto& w = kernel.constant_vector();
  // base entropy of the Bernoulli symbol measure + weighted fiber entropy
  double base = 0.0, fiber = 0.0;
  for (int j = 0; j < T.k(); ++j) {
    const double wj = w[static_cast<std::size_t>(j)];
    if (wj > 0.0) base -= wj * std::log(wj);
    double sum = 0.0;
    for (std::size_t c = 0; c < mu.size(); ++c)
      sum += std::log(T.generator(j).jacobian(mu.cell_center(c))) * mu[c];
    fiber += wj * sum / static_cast<double>(mu.size());
  }
  out.entropy_term = base + fiber;

  // int int phi dQ dmu; the coincidence set is Lebesgue-null and never meets
  // cell centers, so quadrature over the complement is the plain cell sum
  double pot = 0.0;
  for (std::size_t c = 0; c < mu.size(); ++c) {
    const Point x = mu.cell_center(c);
    double q = 0.0;
    for (int j = 0; j < T.k(); ++j)
      q += w[static_cast<std::size_t>(j)] * phi.log_weight(T, j, x);
    pot += q * mu[c];
  }
  out.potential_term = pot / static_cast<double>(mu.size());

  out.lhs = out.entropy_term + out.potential_term;
  out.rhs = std::log(static_cast<double>(T.k()));
  out.gap = out.rhs - out.lhs;
  return out;
}

}  // namespace corrtherm
