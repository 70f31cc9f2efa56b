#pragma once

// Scalar kernels for hyperbolic functions evaluated far outside the range
// where cosh/sinh fit in a double, plus a sign-and-log number type used by
// the holonomy module to multiply matrices whose entries span thousands of
// decades.  Everything here is branch-stable near the tricky spots:
// arguments near 0, arguments near 1 (for arccosh), and huge arguments.

#include <algorithm>
#include <cmath>
#include <limits>

namespace collar {

inline constexpr double kLn2 = 0.6931471805599453;

// log(cosh x), accurate for every finite x (|x| tiny through |x| huge).
inline double log_cosh(double x) {
  x = std::abs(x);
  if (x <= 30.0) return std::log1p(2.0 * std::pow(std::sinh(0.5 * x), 2));
  return x - kLn2 + std::log1p(std::exp(-2.0 * x));
}

// log(sinh x) for x > 0.
inline double log_sinh(double x) {
  if (x <= 30.0) return std::log(std::sinh(x));
  return x - kLn2 + std::log1p(-std::exp(-2.0 * x));
}

// log(coth x) for x > 0, stable for both tiny and huge arguments.
inline double log_coth(double x) {
  const double e = std::expm1(2.0 * x);  // +inf for huge x is fine: 2/inf = 0
  return std::log1p(2.0 / e);
}

// arccosh(1 + u) for u >= 0 without cancellation near u = 0.
inline double acosh_1p(double u) {
  if (u < 0.0) u = 0.0;  // clamp roundoff dips below the branch point
  if (u > 1e15) return kLn2 + std::log1p(u);
  return std::log1p(u + std::sqrt(u * (2.0 + u)));
}

// arccosh(e^L) for L >= 0; usable when e^L overflows a double.
inline double acosh_from_log(double L) {
  if (L < 0.0) L = 0.0;
  if (L <= 30.0) return std::acosh(std::exp(L));
  // arccosh(x) = L + ln(1 + sqrt(1 - e^{-2L}))
  return L + std::log1p(std::sqrt(-std::expm1(-2.0 * L)));
}

// log(e^x + e^y) evaluated stably.
inline double log_add_exp(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double hi = std::max(x, y), lo = std::min(x, y);
  return hi + std::log1p(std::exp(lo - hi));
}

// log(e^x - e^y) for x >= y.  When the difference cancels almost all of the
// operands, *cancellation (if given) receives the number of nats lost,
// i.e. x - result; callers treat results with large cancellation as having
// correspondingly few trustworthy digits.
inline double log_sub_exp(double x, double y, double* cancellation = nullptr) {
  const double inf = std::numeric_limits<double>::infinity();
  if (y == -inf) {
    if (cancellation) *cancellation = 0.0;
    return x;
  }
  const double r = x + std::log1p(-std::exp(y - x));
  if (cancellation) *cancellation = (r == -inf) ? inf : x - r;
  return r;
}

// A real number stored as sign plus log of magnitude; exact for zero.
struct SignedLog {
  double lg = -std::numeric_limits<double>::infinity();
  int sgn = 0;

  static SignedLog of(double v) {
    if (v == 0.0) return {};
    return {std::log(std::abs(v)), v > 0.0 ? 1 : -1};
  }
  static SignedLog from_log(double lg_, int sgn_) { return {lg_, sgn_}; }
  // Value as a double; overflows to +-inf / underflows to 0 honestly.
  double value() const {
    if (sgn == 0) return 0.0;
    return sgn * std::exp(lg);
  }
  SignedLog operator*(const SignedLog& o) const {
    if (sgn == 0 || o.sgn == 0) return {};
    return {lg + o.lg, sgn * o.sgn};
  }
  SignedLog operator/(const SignedLog& o) const {
    return {lg - o.lg, sgn * o.sgn};
  }
};

// Sum of two sign-and-log numbers; reports nats cancelled when the operands
// have opposite signs and nearly equal magnitude.
inline SignedLog sl_add(const SignedLog& x, const SignedLog& y,
                        double* cancellation = nullptr) {
  if (cancellation) *cancellation = 0.0;
  if (x.sgn == 0) return y;
  if (y.sgn == 0) return x;
  if (x.sgn == y.sgn) return {log_add_exp(x.lg, y.lg), x.sgn};
  const SignedLog& big = (x.lg >= y.lg) ? x : y;
  const SignedLog& small = (x.lg >= y.lg) ? y : x;
  if (big.lg == small.lg) {
    if (cancellation) *cancellation = std::numeric_limits<double>::infinity();
    return {};
  }
  const double lg = log_sub_exp(big.lg, small.lg, cancellation);
  return {lg, big.sgn};
}

}  // namespace collar
