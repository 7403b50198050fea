#pragma once

// Double-double extended precision real.
//
// A value is the unevaluated sum hi + lo with |lo| <= ulp(hi) / 2, giving
// roughly 106 bits of mantissa. The error-free transforms follow the usual
// Dekker/Knuth constructions; products use a fused multiply-add.
//
// Training drives the residual |d> - |y> many orders of magnitude below the
// size of the weights, so the residual is computed by cancellation. Plain
// double loses the contraction ratio to rounding around error_sq ~ 1e-12.

#include <cmath>
#include <compare>
#include <limits>
#include <ostream>

namespace qnn {

namespace detail {

inline double two_sum(double a, double b, double& err) {
  const double s = a + b;
  const double bb = s - a;
  err = (a - (s - bb)) + (b - bb);
  return s;
}

inline double quick_two_sum(double a, double b, double& err) {
  const double s = a + b;
  err = b - (s - a);
  return s;
}

inline double two_prod(double a, double b, double& err) {
  const double p = a * b;
  err = std::fma(a, b, -p);
  return p;
}

}  // namespace detail

class Real {
 public:
  constexpr Real() = default;
  constexpr Real(double x) : hi_(x) {}  // NOLINT(google-explicit-constructor)

  static Real from_parts(double hi, double lo) {
    double err = 0.0;
    const double s = detail::quick_two_sum(hi, lo, err);
    return Real(s, err, Normalized{});
  }

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  constexpr double to_double() const { return hi_ + lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  Real operator-() const { return Real(-hi_, -lo_, Normalized{}); }

  friend Real operator+(const Real& a, const Real& b) {
    double e1 = 0.0;
    double e2 = 0.0;
    double s = detail::two_sum(a.hi_, b.hi_, e1);
    const double t = detail::two_sum(a.lo_, b.lo_, e2);
    e1 += t;
    s = detail::quick_two_sum(s, e1, e1);
    e1 += e2;
    s = detail::quick_two_sum(s, e1, e1);
    return Real(s, e1, Normalized{});
  }

  friend Real operator-(const Real& a, const Real& b) { return a + (-b); }

  friend Real operator*(const Real& a, const Real& b) {
    double err = 0.0;
    const double p = detail::two_prod(a.hi_, b.hi_, err);
    err += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    double lo = 0.0;
    const double hi = detail::quick_two_sum(p, err, lo);
    return Real(hi, lo, Normalized{});
  }

  friend Real operator/(const Real& a, const Real& b) {
    const double q1 = a.hi_ / b.hi_;
    if (!std::isfinite(q1)) {
      return Real(q1);
    }
    Real r = a - b * Real(q1);
    const double q2 = r.hi_ / b.hi_;
    r = r - b * Real(q2);
    const double q3 = r.hi_ / b.hi_;
    double lo = 0.0;
    const double hi = detail::quick_two_sum(q1, q2, lo);
    return Real(hi, lo, Normalized{}) + Real(q3);
  }

  Real& operator+=(const Real& o) { return *this = *this + o; }
  Real& operator-=(const Real& o) { return *this = *this - o; }
  Real& operator*=(const Real& o) { return *this = *this * o; }
  Real& operator/=(const Real& o) { return *this = *this / o; }

  friend bool operator==(const Real& a, const Real& b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (const auto c = a.hi_ <=> b.hi_; c != 0) {
      return c;
    }
    return a.lo_ <=> b.lo_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& x) {
    return os << x.to_double();
  }

 private:
  struct Normalized {};
  constexpr Real(double hi, double lo, Normalized) : hi_(hi), lo_(lo) {}

  double hi_ = 0.0;
  double lo_ = 0.0;
};

inline Real abs(const Real& x) { return x.hi() < 0.0 ? -x : x; }

inline bool isfinite(const Real& x) {
  return std::isfinite(x.hi()) && std::isfinite(x.lo());
}

inline Real sqr(const Real& x) { return x * x; }

// One Newton correction on top of the double square root (Karp & Markstein).
inline Real sqrt(const Real& a) {
  if (a.hi() == 0.0) {
    return Real(0.0);
  }
  if (a.hi() < 0.0) {
    return Real(std::numeric_limits<double>::quiet_NaN());
  }
  const double x = 1.0 / std::sqrt(a.hi());
  const double ax = a.hi() * x;
  const Real ax_sq = sqr(Real(ax));
  const double correction = (a - ax_sq).hi() * (x * 0.5);
  return Real(ax) + Real(correction);
}

}  // namespace qnn
