#include "corrtherm/potential.hpp"

#include <algorithm>
#include <cmath>

namespace corrtherm {

bool near_coincidence(const Correspondence& T, const Point& x, double tol) {
  for (int j = 0; j < T.k(); ++j)
    for (int jp = j + 1; jp < T.k(); ++jp)
      if (distance(T.generator(j).eval(x), T.generator(jp).eval(x)) <= tol) return true;
  return false;
}

Potential Potential::custom(std::vector<std::vector<double>> table_per_branch) {
  if (table_per_branch.empty() || table_per_branch.front().empty())
    throw ConfigError("custom potential: empty table");
  const std::size_t n = table_per_branch.front().size();
  for (const auto& row : table_per_branch)
    if (row.size() != n) throw ConfigError("custom potential: ragged table");
  Potential p(Kind::Custom);
  p.table_ = std::move(table_per_branch);
  return p;
}

Potential Potential::parse(const std::string& name) {
  if (name == "jacobian") return jacobian();
  if (name == "torus_measurable") return torus_measurable();
  if (name == "zero") return zero();
  throw ConfigError("unknown potential kind: " + name);
}

std::string Potential::name() const {
  switch (kind_) {
    case Kind::Jacobian:
      return "jacobian";
    case Kind::TorusMeasurable:
      return "torus_measurable";
    case Kind::Zero:
      return "zero";
    case Kind::Custom:
      return "custom";
  }
  return "?";
}

double Potential::log_weight(const Correspondence& T, int j, const Point& x1) const {
  switch (kind_) {
    case Kind::Jacobian:
      return -std::log(T.generator(j).jacobian(x1));
    case Kind::TorusMeasurable: {
      if (near_coincidence(T, x1)) {
        double best = std::numeric_limits<double>::infinity();
        for (int jj = 0; jj < T.k(); ++jj)
          best = std::min(best, std::log(T.generator(jj).jacobian(x1)));
        return -best;
      }
      return -std::log(T.generator(j).jacobian(x1));
    }
    case Kind::Zero:
      return 0.0;
    case Kind::Custom: {
      if (T.dimension() != 1) throw ConfigError("custom potential supports the circle only");
      const auto& row = table_[static_cast<std::size_t>(j)];
      const int n = static_cast<int>(row.size());
      const double t = x1.x() * n - 0.5;
      const double fl = std::floor(t);
      const int i0 = static_cast<int>(fl);
      const double f = t - fl;
      const int a = ((i0 % n) + n) % n;
      const int b = (a + 1) % n;
      return (1.0 - f) * row[static_cast<std::size_t>(a)] + f * row[static_cast<std::size_t>(b)];
    }
  }
  return 0.0;
}

bool Potential::constant_on_branches(const Correspondence& T) const {
  switch (kind_) {
    case Kind::Zero:
      return true;
    case Kind::Jacobian:
      return T.all_constant_jacobian();
    case Kind::TorusMeasurable:
      return false;  // the min-rule on E makes phi point-dependent
    case Kind::Custom:
      return false;
  }
  return false;
}

void Potential::validate(const Correspondence& T) const {
  switch (kind_) {
    case Kind::Jacobian:
      if (!T.constants().coincidence_free)
        throw ConfigError(
            "jacobian potential needs a coincidence-free correspondence "
            "(use torus_measurable for generators with coincidence points)");
      break;
    case Kind::TorusMeasurable:
      if (!T.all_constant_jacobian())
        throw ConfigError("torus_measurable potential needs constant-Jacobian generators");
      break;
    case Kind::Custom:
      if (static_cast<int>(table_.size()) != T.k())
        throw ConfigError("custom potential: table rows != number of generators");
      break;
    case Kind::Zero:
      break;
  }
}

}  // namespace corrtherm
