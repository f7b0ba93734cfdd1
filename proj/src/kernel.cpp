#include "corrtherm/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "corrtherm/rng.hpp"
#include "corrtherm/transfer.hpp"

namespace corrtherm {

Kernel Kernel::uniform(int k) {
  if (k < 1) throw ConfigError("kernel: k must be >= 1");
  return constant(std::vector<double>(static_cast<std::size_t>(k), 1.0 / k));
}

Kernel Kernel::constant(std::vector<double> weights) {
  if (weights.empty()) throw ConfigError("kernel: empty weight vector");
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0 || w > 1.0) throw ConfigError("kernel: weights must lie in [0,1]");
    sum += w;
  }
  if (std::fabs(sum - 1.0) > 1e-12) throw ConfigError("kernel: weights must sum to 1 (1e-12)");
  Kernel kn;
  kn.k_ = static_cast<int>(weights.size());
  kn.const_w_ = std::move(weights);
  return kn;
}

Kernel Kernel::tabulated(std::vector<std::vector<double>> weights) {
  if (weights.empty() || weights.front().empty()) throw ConfigError("kernel: empty table");
  const std::size_t n = weights.front().size();
  for (const auto& row : weights)
    if (row.size() != n) throw ConfigError("kernel: ragged weight table");
  for (std::size_t c = 0; c < n; ++c) {
    double sum = 0.0;
    for (const auto& row : weights) {
      if (row[c] < 0.0 || row[c] > 1.0) throw ConfigError("kernel: tabulated weight outside [0,1]");
      sum += row[c];
    }
    if (std::fabs(sum - 1.0) > 1e-12)
      throw ConfigError("kernel: table column " + std::to_string(c) + " not row-stochastic");
  }
  Kernel kn;
  kn.k_ = static_cast<int>(weights.size());
  kn.tables_ = std::move(weights);
  return kn;
}

bool Kernel::uniform_weights() const {
  if (!constant_weights()) return false;
  return std::all_of(const_w_.begin(), const_w_.end(),
                     [&](double w) { return std::fabs(w - 1.0 / k_) <= 1e-15; });
}

double Kernel::weight(int j, const Point& x) const {
  if (constant_weights()) return const_w_[static_cast<std::size_t>(j)];
  const auto& row = tables_[static_cast<std::size_t>(j)];
  const int n = static_cast<int>(row.size());
  const double t = x.x() * n - 0.5;
  const double fl = std::floor(t);
  const int i0 = static_cast<int>(fl);
  const double f = t - fl;
  const int a = ((i0 % n) + n) % n;
  const int b = (a + 1) % n;
  return (1.0 - f) * row[static_cast<std::size_t>(a)] + f * row[static_cast<std::size_t>(b)];
}

GridDensity pushforward(const GridDensity& mu, const Kernel& kernel, const Correspondence& T) {
  if (kernel.k() != T.k()) throw ConfigError("pushforward: kernel size mismatch");
  const TransferTable table(T, Potential::zero(), mu.dim(), mu.resolution());
  return table.apply_kernel(mu, kernel);
}

Partition Partition::uniform(int dim, int cells_per_dim) {
  if (dim < 1 || dim > kMaxDim) throw ConfigError("partition: dimension out of range");
  if (cells_per_dim < 1) throw ConfigError("partition: need at least one cell per dimension");
  return Partition{dim, cells_per_dim};
}

int Partition::num_cells() const {
  int n = 1;
  for (int i = 0; i < dim; ++i) n *= cells_per_dim;
  return n;
}

RatInterval Partition::circle_cell(int index) const {
  if (dim != 1) throw ConfigError("circle_cell: circle partitions only");
  if (index < 0 || index >= cells_per_dim) throw ConfigError("circle_cell: index out of range");
  return RatInterval{Rational(index, cells_per_dim), Rational(index + 1, cells_per_dim)};
}

int Partition::locate(const Point& x) const {
  int flat = 0, stride = 1;
  for (int i = 0; i < dim; ++i) {
    const int c = std::min(cells_per_dim - 1, static_cast<int>(x[i] * cells_per_dim));
    flat += c * stride;
    stride *= cells_per_dim;
  }
  return flat;
}

namespace {

struct ComposedLinear {
  std::int64_t slope = 1;
  Rational offset = Rational(0);
};

ComposedLinear compose(const ComposedLinear& g, std::int64_t p, const Rational& c) {
  // f(x) = p x + c after g: slope p*slope, offset (p*offset + c) mod 1
  return ComposedLinear{p * g.slope, (Rational(p) * g.offset + c).mod1()};
}

// shared DFS over symbol words for the exact cylinder measure; calls leaf(S)
// on the final pullback set of every surviving symbol word
template <typename Leaf>
void exact_cylinder_dfs(const Correspondence& T, const CylinderSpec& spec, Leaf&& leaf) {
  const int n = static_cast<int>(spec.word.size());
  std::vector<IntervalSet> cells;
  cells.reserve(static_cast<std::size_t>(spec.partition.cells_per_dim));
  for (int i = 0; i < spec.partition.cells_per_dim; ++i)
    cells.emplace_back(spec.partition.circle_cell(i));

  struct Frame {
    IntervalSet set;
    ComposedLinear g;
  };
  auto rec = [&](auto&& self, int t, const Frame& frame) -> void {
    if (t == n) {
      leaf(frame.set);
      return;
    }
    for (int j = 0; j < T.k(); ++j) {
      const GeneratorMap& f = T.generator(j);
      const ComposedLinear g2 = compose(frame.g, f.linear_slope(), f.rational_shift());
      const IntervalSet pulled =
          cells[static_cast<std::size_t>(spec.word[static_cast<std::size_t>(t)])].pullback_linear(
              g2.slope, g2.offset);
      IntervalSet next = frame.set.intersect(pulled);
      if (next.empty()) continue;
      self(self, t + 1, Frame{std::move(next), g2});
    }
  };
  Frame root{cells[static_cast<std::size_t>(spec.word.front())], ComposedLinear{}};
  if (root.set.empty()) return;
  rec(rec, 1, root);
}

void check_cylinder_spec(const Correspondence& T, const CylinderSpec& spec, int max_word) {
  if (spec.word.empty()) throw ConfigError("cylinder: empty word");
  if (static_cast<int>(spec.word.size()) > max_word)
    throw ResourceError("cylinder: word length " + std::to_string(spec.word.size()) +
                        " exceeds the limit " + std::to_string(max_word));
  for (int w : spec.word)
    if (w < 0 || w >= spec.partition.num_cells()) throw ConfigError("cylinder: cell index out of range");
  if (spec.partition.dim != T.dimension()) throw ConfigError("cylinder: partition dimension mismatch");
}

}  // namespace

Rational cylinder_measure_rational(const Correspondence& T, const CylinderSpec& spec,
                                   int max_word) {
  check_cylinder_spec(T, spec, max_word);
  if (!T.exact_circle_linear())
    throw ConfigError("exact cylinder mode needs rational circle-linear generators");
  Rational total(0);
  exact_cylinder_dfs(T, spec, [&](const IntervalSet& S) { total += S.measure(); });
  Rational denom(1);
  for (std::size_t i = 1; i < spec.word.size(); ++i) denom *= Rational(T.k());
  return total / denom;
}

double cylinder_measure(const GridDensity& mu, const Kernel& kernel, const Correspondence& T,
                        const CylinderSpec& spec, int max_word) {
  check_cylinder_spec(T, spec, max_word);
  if (kernel.k() != T.k()) throw ConfigError("cylinder: kernel size mismatch");
  const int n = static_cast<int>(spec.word.size());

  if (T.exact_circle_linear() && kernel.uniform_weights() && mu.dim() == 1) {
    if (mu.is_constant_one())
      return cylinder_measure_rational(T, spec, max_word).to_double();
    double total = 0.0;
    exact_cylinder_dfs(T, spec, [&](const IntervalSet& S) {
      std::vector<std::pair<double, double>> ivs;
      ivs.reserve(S.size());
      for (const auto& iv : S.parts())
        ivs.emplace_back(iv.lo.to_double(), iv.hi.to_double());
      total += mu.integrate_intervals(ivs);
    });
    return total / std::pow(static_cast<double>(T.k()), n - 1);
  }

  // quadrature mode: score mu's cells with kernel weights along forward walks
  const double cell_vol = 1.0 / static_cast<double>(mu.size());
  double total = 0.0;
  for (std::size_t c = 0; c < mu.size(); ++c) {
    const Point x0 = mu.cell_center(c);
    if (spec.partition.locate(x0) != spec.word.front()) continue;
    const double base = mu[c] * cell_vol;
    auto rec = [&](auto&& self, int t, const Point& x, double w) -> void {
      if (t == n) {
        total += base * w;
        return;
      }
      for (int j = 0; j < T.k(); ++j) {
        const double wj = kernel.weight(j, x);
        if (wj == 0.0) continue;
        const Point y = T.generator(j).eval(x);
        if (spec.partition.locate(y) != spec.word[static_cast<std::size_t>(t)]) continue;
        self(self, t + 1, y, w * wj);
      }
    };
    rec(rec, 1, x0, 1.0);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Markov sampling with an exact rational state for integer-linear generators.
// Doubles cannot iterate digit-shift maps forward (each x -> p x mod 1 sheds
// mantissa bits and the orbit collapses onto dyadic points), so the state is
// a fraction a/D with D = (lcm of shift/start denominators) * large prime and
// every step is computed in modular arithmetic.
// ---------------------------------------------------------------------------
namespace {

bool miller_rabin(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  auto mulmod = [&](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
  };
  auto powmod = [&](std::uint64_t a, std::uint64_t e) {
    std::uint64_t acc = 1;
    while (e) {
      if (e & 1) acc = mulmod(acc, a);
      a = mulmod(a, a);
      e >>= 1;
    }
    return acc;
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = powmod(a % n, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r && witness; ++i) {
      x = mulmod(x, x);
      if (x == n - 1) witness = false;
    }
    if (witness) return false;
  }
  return true;
}

std::uint64_t prev_prime(std::uint64_t n) {
  if (n % 2 == 0) --n;
  while (!miller_rabin(n)) n -= 2;
  return n;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  return a / std::gcd(a, b) * b;
}

/// Exact state a/D on the torus lattice (per-coordinate numerators).
class ExactLatticeState {
 public:
  static constexpr std::uint64_t kDenCap = std::uint64_t{1} << 62;

  /// Returns an engaged state only when every generator is integer-linear
  /// with rational shifts and the combined denominator stays manageable.
  static std::optional<ExactLatticeState> create(const Correspondence& T, const Point& x0) {
    std::int64_t L = 1;
    for (const auto& g : T.generators()) {
      if (g.kind() == GeneratorMap::Kind::CircleLinear && g.has_rational_form())
        L = lcm64(L, g.rational_shift().den());
      else if (g.kind() == GeneratorMap::Kind::TorusLinear && g.has_rational_shift_vector())
        for (const auto& r : g.rational_shift_vector()) L = lcm64(L, r.den());
      else
        return std::nullopt;
      if (L > 1'000'000'000) return std::nullopt;
    }
    // fold an exactly-representable start into the lattice (keeps e.g. 1/3 exact)
    std::array<Rational, kMaxDim> start{};
    bool start_rational = true;
    for (int i = 0; i < x0.dim(); ++i) {
      try {
        start[static_cast<std::size_t>(i)] = Rational::from_double(x0[i], 1'000'000, 1e-12);
      } catch (const NumericError&) {
        start_rational = false;
        break;
      }
    }
    std::int64_t L_all = L;
    if (start_rational)
      for (int i = 0; i < x0.dim(); ++i) {
        L_all = lcm64(L_all, start[static_cast<std::size_t>(i)].den());
        if (L_all > 1'000'000'000) {
          start_rational = false;
          L_all = L;
          break;
        }
      }
    ExactLatticeState s;
    s.dim_ = x0.dim();
    const std::uint64_t P = prev_prime(kDenCap / static_cast<std::uint64_t>(L_all));
    s.den_ = static_cast<std::uint64_t>(L_all) * P;
    for (int i = 0; i < s.dim_; ++i) {
      if (start_rational) {
        const Rational& r = start[static_cast<std::size_t>(i)];
        s.num_[static_cast<std::size_t>(i)] =
            static_cast<std::uint64_t>(r.num()) * (s.den_ / static_cast<std::uint64_t>(r.den()));
      } else {
        const long double v = static_cast<long double>(x0[i]) * static_cast<long double>(s.den_);
        s.num_[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(llroundl(v)) % s.den_;
      }
    }
    return s;
  }

  void step(const GeneratorMap& g) {
    const auto D = static_cast<__int128>(den_);
    if (g.kind() == GeneratorMap::Kind::CircleLinear) {
      const Rational& c = g.rational_shift();
      const __int128 shift = static_cast<__int128>(c.num()) * (den_ / static_cast<std::uint64_t>(c.den()));
      __int128 v = static_cast<__int128>(g.linear_slope()) * num_[0] + shift;
      num_[0] = static_cast<std::uint64_t>(((v % D) + D) % D);
      return;
    }
    std::array<std::uint64_t, kMaxDim> next{};
    for (int i = 0; i < dim_; ++i) {
      const Rational& c = g.rational_shift_vector()[static_cast<std::size_t>(i)];
      __int128 v = static_cast<__int128>(c.num()) * (den_ / static_cast<std::uint64_t>(c.den()));
      for (int j = 0; j < dim_; ++j)
        v += static_cast<__int128>(g.matrix_entry(i, j)) * num_[static_cast<std::size_t>(j)];
      next[static_cast<std::size_t>(i)] = static_cast<std::uint64_t>(((v % D) + D) % D);
    }
    num_ = next;
  }

  Point point() const {
    std::array<double, kMaxDim> c{};
    for (int i = 0; i < dim_; ++i)
      c[static_cast<std::size_t>(i)] =
          static_cast<double>(num_[static_cast<std::size_t>(i)]) / static_cast<double>(den_);
    return Point(std::span<const double>(c.data(), dim_));
  }

 private:
  int dim_ = 1;
  std::uint64_t den_ = 1;
  std::array<std::uint64_t, kMaxDim> num_{};
};

int draw_symbol(const Kernel& kernel, const Point& x, double u) {
  double cum = 0.0;
  for (int j = 0; j < kernel.k(); ++j) {
    cum += kernel.weight(j, x);
    if (u < cum) return j;
  }
  return kernel.k() - 1;
}

}  // namespace

MarkovSample sample_markov(const Correspondence& T, const Kernel& kernel, const Point& x0,
                           int steps, std::uint64_t seed, std::uint64_t stream) {
  if (steps < 1) throw ConfigError("sample_markov: steps must be >= 1");
  if (kernel.k() != T.k()) throw ConfigError("sample_markov: kernel size mismatch");
  if (x0.dim() != T.dimension()) throw ConfigError("sample_markov: x0 dimension mismatch");
  MarkovSample out;
  out.seed = seed;
  out.points.reserve(static_cast<std::size_t>(steps) + 1);
  out.symbols.reserve(static_cast<std::size_t>(steps));
  CounterRng rng(seed, stream);

  auto exact = ExactLatticeState::create(T, x0);
  Point x = exact ? exact->point() : x0;
  out.points.push_back(x);
  for (int t = 0; t < steps; ++t) {
    const int j = draw_symbol(kernel, x, rng.next_unit());
    out.symbols.push_back(j);
    if (exact) {
      exact->step(T.generator(j));
      x = exact->point();
    } else {
      x = T.generator(j).eval(x);
    }
    out.points.push_back(x);
  }
  return out;
}

SkewState skew_product_step(const SkewState& s, const Correspondence& T) {
  if (s.symbols.empty()) throw ConfigError("skew_product_step: symbol window exhausted");
  const int j = s.symbols.front();
  if (j < 0 || j >= T.k()) throw ConfigError("skew_product_step: symbol out of range");
  SkewState next;
  next.symbols.assign(s.symbols.begin() + 1, s.symbols.end());
  next.x = T.generator(j).eval(s.x);
  return next;
}

std::vector<Point> skew_projection(const SkewState& s, const Correspondence& T, int depth) {
  if (depth < 1 || depth > static_cast<int>(s.symbols.size()) + 1)
    throw ConfigError("skew_projection: depth exceeds the symbol window");
  std::vector<Point> orbit;
  orbit.reserve(static_cast<std::size_t>(depth));
  Point x = s.x;
  orbit.push_back(x);
  for (int i = 0; i + 1 < depth; ++i) {
    x = T.generator(s.symbols[static_cast<std::size_t>(i)]).eval(x);
    orbit.push_back(x);
  }
  return orbit;
}

}  // namespace corrtherm
