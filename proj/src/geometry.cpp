#include "collar/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "collar/scalar.hpp"

namespace collar {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Largest component size for which cosh^2 terms stay comfortably inside
// double range, so the residual can be formed directly.
constexpr double kDirectCutover = 30.0;

// log(DBL_MAX), minus margin: beyond this log-magnitude the raw residual
// cannot be represented as a double.
constexpr double kMaxLogMagnitude = 709.0;

void require_finite(const TriangleLengths& t, const char* who) {
  if (!(std::isfinite(t.a) && std::isfinite(t.b) && std::isfinite(t.c))) {
    throw OutOfDomain(std::string(who) + ": triangle lengths must be finite");
  }
}

void require_finite(const CollarParams& p, const char* who) {
  if (!(std::isfinite(p.x) && std::isfinite(p.y))) {
    throw OutOfDomain(std::string(who) + ": collar parameters must be finite");
  }
}

// The three fiber terms T_i = cosh^2 l_i / (cosh a cosh b cosh c) along with
// the tanh values needed for the perimeter derivative of their sum.
struct ScaledTerms {
  double t1, t2, t3;  // each exp(lc_i - lc_j - lc_k), lc = log cosh
  double g;           // t1 + t2 + t3 - 2, the scaled collar residual
  double dg;          // d/ds of g along the fiber (all components at rate 1/3)
};

ScaledTerms scaled_terms(const TriangleLengths& t) {
  const double la = log_cosh(t.a);
  const double lb = log_cosh(t.b);
  const double lc = log_cosh(t.c);
  ScaledTerms out;
  out.t1 = std::exp(la - lb - lc);
  out.t2 = std::exp(lb - la - lc);
  out.t3 = std::exp(lc - la - lb);
  out.g = (out.t1 + out.t2 + out.t3) - 2.0;
  const double ta = std::tanh(t.a);
  const double tb = std::tanh(t.b);
  const double tc = std::tanh(t.c);
  out.dg = (out.t1 * (ta - tb - tc) + out.t2 * (tb - ta - tc) +
            out.t3 * (tc - ta - tb)) /
           3.0;
  return out;
}

// Point of the fiber of p at perimeter s: the unique triple with
// project_pi = p and a + b + c = s.
TriangleLengths fiber_at(const CollarParams& p, double s) {
  const double a = (p.x + 2.0 * s) / 6.0;
  const double half = 0.5 * (s - a);
  return {a, half + 0.25 * p.y, half - 0.25 * p.y};
}

// Final Newton corrections on the regrouped residual
//   (cosh w - cosh u cosh v)^2 - (sinh u sinh v - 1)(sinh u sinh v + 1),
// where w is the largest component.  Expanding reproduces the collar
// residual exactly, but this grouping evaluates the two O(1)-sized branch
// quantities directly instead of cancelling them out of cosh^2-sized terms,
// so its absolute noise is smaller than the log-domain residual's by a
// factor ~cosh(w).  Downstream readbacks that divide by tanh of a small
// component (the twist near a short curve) need every digit of the
// perimeter this pass recovers.  Plain doubles only, hence the size cap.
double polish_perimeter(const CollarParams& p, double s) {
  const double eps = std::numeric_limits<double>::epsilon();
  const double s_in = s;
  for (int k = 0; k < 3; ++k) {
    const TriangleLengths t = fiber_at(p, s);
    double u = t.a;
    double v = t.b;
    double w = t.c;
    if (u > w) std::swap(u, w);
    if (v > w) std::swap(v, w);
    if (!(w <= 700.0) || u < 0.0) return s_in;
    const double chu = std::cosh(u);
    const double chv = std::cosh(v);
    const double chw = std::cosh(w);
    const double shu = std::sinh(u);
    const double shv = std::sinh(v);
    const double shw = std::sinh(w);
    const double d = std::fma(-chu, chv, chw);  // one rounding in the product
    const double t1 = shu * shv;
    const double g = d * d - (t1 - 1.0) * (t1 + 1.0);
    const double dd = (shw - (shu * chv + chu * shv)) / 3.0;
    const double dt1 = (chu * shv + shu * chv) / 3.0;
    const double dg = 2.0 * (d * dd - t1 * dt1);
    if (!std::isfinite(g) || !std::isfinite(dg) || dg == 0.0) return s_in;
    const double step = g / dg;
    // The loop above already resolved the perimeter to ~1e-10; a large
    // correction means this grouping is degenerate here, so keep the input.
    if (!std::isfinite(step) || std::abs(step) > 1e-6 * (1.0 + s)) {
      return s_in;
    }
    s -= step;
    if (std::abs(step) <= 0.5 * eps * (1.0 + s)) break;
  }
  return s;
}

}  // namespace

double collar_residual(const TriangleLengths& t) {
  require_finite(t, "collar_residual");
  const double m = std::max({std::abs(t.a), std::abs(t.b), std::abs(t.c)});
  if (m <= kDirectCutover) {
    const double ca = std::cosh(t.a);
    const double cb = std::cosh(t.b);
    const double cc = std::cosh(t.c);
    return ca * ca + cb * cb + cc * cc - 2.0 * ca * cb * cc;
  }
  // Factored form: every term is exp of a log magnitude, combined as signed
  // logs so only the final difference is exponentiated.
  const double la = log_cosh(t.a);
  const double lb = log_cosh(t.b);
  const double lc = log_cosh(t.c);
  const double pos = log_add_exp(log_add_exp(2.0 * la, 2.0 * lb), 2.0 * lc);
  const double neg = kLn2 + la + lb + lc;
  // Past the direct cutover the two log magnitudes are large; once they
  // agree to within rounding error of their own size, the difference carries
  // no significant bits and any value produced from it would be noise.
  const double eps = std::numeric_limits<double>::epsilon();
  if (std::abs(pos - neg) <=
      64.0 * eps * std::max(std::abs(pos), std::abs(neg))) {
    throw DomainTooLarge(
        "collar_residual: value cannot be resolved at double precision at "
        "this scale; use collar_residual_scaled instead");
  }
  double cancellation = 0.0;
  double lg;
  double sgn;
  if (pos >= neg) {
    lg = log_sub_exp(pos, neg, &cancellation);
    sgn = 1.0;
  } else {
    lg = log_sub_exp(neg, pos, &cancellation);
    sgn = -1.0;
  }
  if (lg > kMaxLogMagnitude) {
    throw DomainTooLarge(
        "collar_residual: |residual| ~ exp(" + std::to_string(lg) +
        ") exceeds double range; use collar_residual_scaled instead");
  }
  return sgn * std::exp(lg);
}

double collar_residual_scaled(const TriangleLengths& t) {
  require_finite(t, "collar_residual_scaled");
  return scaled_terms(t).g;
}

double delta_residual(const TriangleLengths& t) {
  require_finite(t, "delta_residual");
  return t.sum() - 2.0 * t.max();
}

bool in_H(const TriangleLengths& t, const Tolerance& tol) {
  require_finite(t, "in_H");
  if (!(t.a > 0.0 && t.b > 0.0 && t.c > 0.0)) return false;
  const double inv_prod =
      std::exp(-(log_cosh(t.a) + log_cosh(t.b) + log_cosh(t.c)));
  return std::abs(collar_residual_scaled(t)) <=
         tol.abs_tol * (1.0 + inv_prod);
}

bool in_Delta(const TriangleLengths& t, const Tolerance& tol) {
  require_finite(t, "in_Delta");
  if (!(t.a >= 0.0 && t.b >= 0.0 && t.c >= 0.0)) return false;
  return std::abs(delta_residual(t)) <= tol.abs_tol * (1.0 + t.sum());
}

void require_on_surface(const TriangleLengths& t, const Tolerance& tol,
                        const char* who) {
  if (!(std::isfinite(t.a) && std::isfinite(t.b) && std::isfinite(t.c)) ||
      !(t.a > 0.0 && t.b > 0.0 && t.c > 0.0)) {
    throw NotOnH(std::string(who) +
                 ": triple is not a positive finite collar-surface point");
  }
  const double eps = std::numeric_limits<double>::epsilon();
  const double allow = std::max(tol.abs_tol, 64.0 * eps * (1.0 + t.sum()));
  if (std::abs(collar_residual_scaled(t)) > allow) {
    throw NotOnH(std::string(who) + ": collar residual exceeds tolerance");
  }
}

CollarParams project_pi(const TriangleLengths& t) {
  require_finite(t, "project_pi");
  return {4.0 * t.a - 2.0 * t.b - 2.0 * t.c, 2.0 * t.b - 2.0 * t.c};
}

TriangleLengths invert_pi_delta(const CollarParams& p) {
  require_finite(p, "invert_pi_delta");
  const double x = p.x;
  const double y = p.y;
  // Regions tested in fixed order; the formulas agree on shared boundaries.
  if (x >= std::abs(y)) {
    // a-dominant sector: a = b + c.
    return {0.5 * x, 0.25 * (x + y), 0.25 * (x - y)};
  }
  if (y >= std::max(0.0, x)) {
    // b-dominant sector: b = a + c.
    return {0.5 * y, 0.25 * (3.0 * y - x), 0.25 * (y - x)};
  }
  // c-dominant sector: c = a + b.  Reached exactly when y <= 0 and
  // x + y <= 0 (complement of the first two sectors).
  return {-0.5 * y, -0.25 * (x + y), -0.25 * (x + 3.0 * y)};
}

TriangleLengths invert_pi_H(const CollarParams& p, const Tolerance& tol,
                            SolveStats* stats) {
  require_finite(p, "invert_pi_H");
  if (p.x == 0.0 && p.y == 0.0) {
    // Symmetric point in closed form: cosh a = 3/2 solves the collar
    // equation with a = b = c.
    const double a0 = std::acosh(1.5);
    if (stats) {
      *stats = {0, 3.0 * a0, collar_residual_scaled({a0, a0, a0})};
    }
    return {a0, a0, a0};
  }

  // The cone solution of the same parameters has the provably smallest
  // perimeter on the fiber that could matter: there the scaled residual
  // equals 1/(cosh a cosh b cosh c) > 0, and it decreases through zero as
  // the perimeter grows.
  const double s_delta = invert_pi_delta(p).sum();
  double lo = s_delta;
  double hi = s_delta + 3.0;
  double width = 3.0;
  bool bracketed = false;
  for (int k = 0; k < 64; ++k) {
    if (scaled_terms(fiber_at(p, hi)).g <= 0.0) {
      bracketed = true;
      break;
    }
    lo = hi;
    width *= 2.0;
    hi += width;
  }
  if (!bracketed) {
    throw NoConvergence("invert_pi_H: failed to bracket the fiber crossing");
  }

  // Safeguarded Newton in the perimeter: bisect whenever the Newton step
  // leaves the bracket, and stop at the scaled-residual target or once the
  // bracket is resolved to tolerance.
  const double eps = std::numeric_limits<double>::epsilon();
  double s = 0.5 * (lo + hi);
  int iterations = 0;
  double g = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  for (; iterations < tol.max_iter; ++iterations) {
    const ScaledTerms terms = scaled_terms(fiber_at(p, s));
    g = terms.g;
    // Evaluation of g loses absolute accuracy ~ eps * perimeter through the
    // log-cosh exponents, so don't chase residuals below that floor.
    const double g_floor = 32.0 * eps * (1.0 + s);
    if (std::abs(g) <= std::max(tol.abs_tol, g_floor)) {
      converged = true;
      break;
    }
    if (g > 0.0) {
      lo = s;
    } else {
      hi = s;
    }
    // Width exit only at the machine floor: the perimeter cannot be located
    // more finely, and stopping on a looser width would leave a residual
    // far above what the |g| criterion promises.
    if (hi - lo <= 4.0 * eps * (1.0 + std::abs(s))) {
      converged = true;
      break;
    }
    double next = 0.5 * (lo + hi);
    if (terms.dg != 0.0) {
      const double newton = s - g / terms.dg;
      if (newton > lo && newton < hi) {
        next = newton;
      }
    }
    s = next;
  }
  if (!converged) {
    throw NoConvergence("invert_pi_H: no convergence after " +
                        std::to_string(tol.max_iter) + " iterations");
  }

  s = polish_perimeter(p, s);
  const TriangleLengths result = fiber_at(p, s);
  if (!(result.a >= 0.0 && result.b >= 0.0 && result.c >= 0.0)) {
    throw NegativeComponent(
        "invert_pi_H: solver left the nonnegative cone at perimeter " +
        std::to_string(s));
  }
  if (stats) {
    *stats = {iterations, s, scaled_terms(result).g};
  }
  return result;
}

std::vector<CollarParams> cross_section(double C, int n, const Tolerance& tol) {
  if (!std::isfinite(C)) {
    throw OutOfDomain("cross_section: C must be finite");
  }
  if (n < 1) {
    throw DomainError("cross_section: need at least one sample point");
  }
  if (!(C > 2.0)) {
    throw EmptySection("cross_section: the plane a+b+c = " +
                       std::to_string(C) +
                       " misses the collar surface (C <= 2)");
  }
  const double u = C / 3.0;
  // Scaled residual at the plane centroid (u,u,u): 3/cosh(u) - 2.  It is
  // nonnegative exactly when C <= 3*arccosh(3/2), the minimum perimeter on
  // the surface, attained only at the symmetric point.
  const double centroid_g = 3.0 * std::exp(-log_cosh(u)) - 2.0;
  if (centroid_g >= 0.0) {
    throw EmptySection(
        "cross_section: the plane a+b+c = " + std::to_string(C) +
        " misses the collar surface (minimum perimeter is 3*arccosh(3/2))");
  }

  std::vector<CollarParams> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double phi = 2.0 * kPi * static_cast<double>(k) / n;
    const double cs = std::cos(phi);
    const double sn = std::sin(phi);
    // Direction in the plane whose image under the projection is exactly
    // r * (cos phi, sin phi); its components sum to zero.
    const double d1 = cs / 6.0;
    const double d2 = -cs / 12.0 + sn / 4.0;
    const double d3 = -cs / 12.0 - sn / 4.0;
    // Furthest radius keeping all components nonnegative: on the simplex
    // edge the residual is a positive square plus one, so the sign flips
    // exactly once between centroid and edge.
    const double dmin = std::min({d1, d2, d3});
    const double r_edge = u / -dmin;
    double r_lo = 0.0;
    double r_hi = r_edge;
    for (int iter = 0; iter < 200; ++iter) {
      if (r_hi - r_lo <= tol.abs_tol * (1.0 + r_hi)) break;
      const double r = 0.5 * (r_lo + r_hi);
      const TriangleLengths t{u + r * d1, u + r * d2, u + r * d3};
      if (collar_residual_scaled(t) <= 0.0) {
        r_lo = r;
      } else {
        r_hi = r;
      }
    }
    const double r = 0.5 * (r_lo + r_hi);
    out.push_back({r * cs, r * sn});
  }
  return out;
}

}  // namespace collar
