#include "corrtherm/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

namespace corrtherm {

namespace {
std::int64_t gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return static_cast<std::int64_t>(a);
}
constexpr __int128 kMax64 = std::numeric_limits<std::int64_t>::max();
}  // namespace

Rational Rational::make_checked(__int128 n, __int128 d) {
  if (d == 0) throw NumericError("rational division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const std::int64_t g = n == 0 ? 0 : gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  if (n == 0) d = 1;
  if (n > kMax64 || -n > kMax64 || d > kMax64)
    throw NumericError("rational overflow after normalization");
  Rational r;
  r.num_ = static_cast<std::int64_t>(n);
  r.den_ = static_cast<std::int64_t>(d);
  return r;
}

Rational::Rational(std::int64_t n, std::int64_t d) { *this = make_checked(n, d); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::make_checked(static_cast<__int128>(a.num_) * b.den_ +
                                    static_cast<__int128>(b.num_) * a.den_,
                                static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::make_checked(static_cast<__int128>(a.num_) * b.den_ -
                                    static_cast<__int128>(b.num_) * a.den_,
                                static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::make_checked(static_cast<__int128>(a.num_) * b.num_,
                                static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  return Rational::make_checked(static_cast<__int128>(a.num_) * b.den_,
                                static_cast<__int128>(a.den_) * b.num_);
}

bool operator<(const Rational& a, const Rational& b) {
  return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
}

std::int64_t Rational::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

Rational Rational::mod1() const { return *this - Rational(floor()); }

std::string Rational::str() const {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%lld/%lld", static_cast<long long>(num_),
                static_cast<long long>(den_));
  return buf;
}

Rational Rational::from_double(double x, std::int64_t max_den, double tol) {
  // Continued-fraction expansion, stopping at the first convergent within tol.
  const double x0 = x;
  std::int64_t p0 = 1, q0 = 0;  // previous convergent
  std::int64_t p1 = static_cast<std::int64_t>(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (std::fabs(static_cast<double>(p1) / q1 - x0) <= tol) return Rational(p1, q1);
    if (frac < 1e-15) break;
    const double inv = 1.0 / frac;
    const std::int64_t a = static_cast<std::int64_t>(std::floor(inv));
    frac = inv - std::floor(inv);
    const std::int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  if (std::fabs(static_cast<double>(p1) / q1 - x0) <= tol) return Rational(p1, q1);
  throw NumericError("no rational approximation within tolerance for " + std::to_string(x));
}

IntervalSet::IntervalSet(RatInterval iv) {
  if (!iv.empty()) parts_.push_back(iv);
}

void IntervalSet::normalize() {
  std::sort(parts_.begin(), parts_.end(),
            [](const RatInterval& a, const RatInterval& b) { return a.lo < b.lo; });
  std::vector<RatInterval> merged;
  for (const auto& iv : parts_) {
    if (iv.empty()) continue;
    if (!merged.empty() && iv.lo <= merged.back().hi)
      merged.back().hi = max(merged.back().hi, iv.hi);
    else
      merged.push_back(iv);
  }
  parts_ = std::move(merged);
}

Rational IntervalSet::measure() const {
  Rational m(0);
  for (const auto& iv : parts_) m += iv.length();
  return m;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  std::size_t i = 0, j = 0;
  while (i < parts_.size() && j < other.parts_.size()) {
    const RatInterval& a = parts_[i];
    const RatInterval& b = other.parts_[j];
    RatInterval iv{max(a.lo, b.lo), min(a.hi, b.hi)};
    if (!iv.empty()) out.parts_.push_back(iv);
    if (a.hi < b.hi)
      ++i;
    else
      ++j;
  }
  return out;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  IntervalSet out;
  out.parts_ = parts_;
  out.parts_.insert(out.parts_.end(), other.parts_.begin(), other.parts_.end());
  out.normalize();
  return out;
}

IntervalSet IntervalSet::pullback_linear(std::int64_t slope, const Rational& shift) const {
  if (slope < 1) throw ConfigError("pullback slope must be >= 1");
  // x in [0,1) with slope*x + shift = y + i for y in [a,b): one interval per
  // integer i with [(a+i-shift)/slope, (b+i-shift)/slope) meeting [0,1).
  IntervalSet out;
  const Rational one(1);
  for (const auto& iv : parts_) {
    std::int64_t i = (shift - iv.hi).floor();
    for (;; ++i) {
      const Rational lo = (iv.lo + Rational(i) - shift) / Rational(slope);
      if (lo >= one) break;
      const Rational hi = (iv.hi + Rational(i) - shift) / Rational(slope);
      RatInterval piece{max(lo, Rational(0)), min(hi, one)};
      if (!piece.empty()) out.parts_.push_back(piece);
    }
  }
  out.normalize();
  return out;
}

}  // namespace corrtherm
