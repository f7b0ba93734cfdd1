#ifndef CORRTHERM_RATIONAL_HPP
#define CORRTHERM_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "corrtherm/errors.hpp"

namespace corrtherm {

/// Exact rational with 64-bit numerator/denominator, gcd-normalized, den > 0.
/// Arithmetic goes through 128-bit intermediates and throws NumericError if a
/// normalized result no longer fits, so iterated pullbacks cannot drift silently.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT: implicit on purpose
  Rational(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::int64_t floor() const;
  bool is_integer() const { return den_ == 1; }
  std::string str() const;

  Rational operator-() const { return Rational(-num_, den_); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rational& a, const Rational& b);
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  /// mod-1 reduction into [0,1).
  Rational mod1() const;

  /// Best rational approximation of x with denominator <= max_den (continued
  /// fractions); throws NumericError if no approximant lands within tol.
  static Rational from_double(double x, std::int64_t max_den = 1'000'000, double tol = 1e-9);

 private:
  static Rational make_checked(__int128 n, __int128 d);
  std::int64_t num_, den_;
};

inline Rational min(const Rational& a, const Rational& b) { return a < b ? a : b; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

/// Half-open interval [lo, hi) with rational endpoints.
struct RatInterval {
  Rational lo, hi;
  bool empty() const { return !(lo < hi); }
  Rational length() const { return empty() ? Rational(0) : hi - lo; }
};

/// A finite union of disjoint half-open rational intervals inside [0,1),
/// kept sorted with adjacent pieces merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(RatInterval iv);
  static IntervalSet full() { return IntervalSet(RatInterval{Rational(0), Rational(1)}); }

  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }
  const std::vector<RatInterval>& parts() const { return parts_; }

  Rational measure() const;
  IntervalSet intersect(const IntervalSet& other) const;

  /// Preimage under the circle branch map x -> (slope*x + shift) mod 1 with
  /// integer slope >= 1; the result is again a union of intervals in [0,1).
  IntervalSet pullback_linear(std::int64_t slope, const Rational& shift) const;

  /// Sorted-merge union (used for preimages of a set under several maps).
  IntervalSet unite(const IntervalSet& other) const;

 private:
  void normalize();
  std::vector<RatInterval> parts_;
};

}  // namespace corrtherm

#endif
