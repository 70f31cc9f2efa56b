#include "collar/converters.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "collar/geometry.hpp"
#include "collar/scalar.hpp"

namespace collar {

namespace {

// Component size beyond which cosh factors are formed in log space.
constexpr double kLogBranch = 30.0;

// arccosh(cosh(w) * coth(l)): the b- and c-equations of the hyperbolic
// conversion share this shape.  The argument is >= 1 for every real w, with
// equality approached as l -> inf, w -> 0.
double acosh_cosh_coth(double w, double l) {
  if (std::abs(w) <= kLogBranch) {
    // cosh(w)coth(l) - 1 = (cosh w - 1)coth l + (coth l - 1): both terms
    // positive, no cancellation.
    const double sh = std::sinh(0.5 * w);
    const double u =
        2.0 * sh * sh / std::tanh(l) + 2.0 / std::expm1(2.0 * l);
    return acosh_1p(u);
  }
  return acosh_from_log(log_cosh(w) + log_coth(l));
}

void require_finite_fn(const FenchelNielsen& fn) {
  if (!(std::isfinite(fn.two_ell) && std::isfinite(fn.two_tau))) {
    throw OutOfDomain("Fenchel-Nielsen coordinates must be finite");
  }
}

void require_finite_dt(const DehnThurston& dt) {
  if (!(std::isfinite(dt.two_ell) && std::isfinite(dt.two_tau))) {
    throw OutOfDomain("Dehn-Thurston coordinates must be finite");
  }
}

}  // namespace

TriangleLengths fn_to_triangle(const FenchelNielsen& fn) {
  require_finite_fn(fn);
  if (!(fn.two_ell > 0.0)) {
    throw NonPositiveLength("fn_to_triangle: length parameter must be > 0");
  }
  const double l = 0.5 * fn.two_ell;
  const double tau = 0.5 * fn.two_tau;
  return {l, acosh_cosh_coth(tau, l), acosh_cosh_coth(l - tau, l)};
}

CollarParams fn_to_cp(const FenchelNielsen& fn) {
  return project_pi(fn_to_triangle(fn));
}

TriangleLengths dt_to_triangle(const DehnThurston& dt) {
  require_finite_dt(dt);
  if (dt.two_ell < 0.0) {
    throw NegativeLength("dt_to_triangle: measure parameter must be >= 0");
  }
  const double l = 0.5 * dt.two_ell;
  const double tau = 0.5 * dt.two_tau;
  return {l, std::abs(tau), std::abs(l - tau)};
}

CollarParams dt_to_cp(const DehnThurston& dt) {
  return project_pi(dt_to_triangle(dt));
}

namespace {

// Magnitude |w| solving cosh(w) = cosh(comp) * tanh(l); on the collar
// surface the right side is >= 1, and roundoff dips below are clamped.
double twist_magnitude(double comp, double l) {
  if (comp <= kLogBranch) {
    return acosh_1p(std::fma(std::cosh(comp), std::tanh(l), -1.0));
  }
  const double L = log_cosh(comp) - log_coth(l);  // log(cosh comp * tanh l)
  return (L <= 0.0) ? 0.0 : acosh_from_log(L);
}

}  // namespace

FenchelNielsen cp_to_fn(const CollarParams& p, const Tolerance& tol) {
  // Solve the fiber to the working-precision floor regardless of the
  // (possibly looser) tolerance promised to the caller: the twist readback
  // below consumes every digit the fiber can give.
  Tolerance fiber_tol = tol;
  fiber_tol.abs_tol = std::min(tol.abs_tol, 1e-14);
  const TriangleLengths t = invert_pi_H(p, fiber_tol);
  const double l = t.a;
  const double lcoth = log_coth(l);

  // Two independent readbacks, each an inverted cosh and therefore a
  // square-root fold at its own zero: the b-equation recovers |tau| (fold at
  // tau = 0), the c-equation recovers |l - tau| (fold at tau = l).  Signs
  // are resolved by consistency with the other equation in the log-cosh
  // domain, where huge components cannot overflow.
  const double abs_tau = twist_magnitude(t.b, l);
  const double target_c = log_cosh(t.c);
  const double miss_p =
      std::abs(log_cosh(l - abs_tau) + lcoth - target_c);
  const double miss_m =
      std::abs(log_cosh(l + abs_tau) + lcoth - target_c);
  const double tau_b = (miss_p <= miss_m) ? abs_tau : -abs_tau;

  const double w = twist_magnitude(t.c, l);
  const double target_b = log_cosh(t.b) - lcoth;
  const double miss_lo = std::abs(log_cosh(l - w) - target_b);
  const double miss_hi = std::abs(log_cosh(l + w) - target_b);
  const double tau_c = (miss_lo <= miss_hi) ? (l - w) : (l + w);

  // Use whichever readback sits farther from its fold; near either fold the
  // other equation is well-conditioned, so the recovered twist keeps O(1)
  // conditioning across the whole plane.
  const double tau = (std::abs(tau_b) >= w) ? tau_b : tau_c;
  return {2.0 * l, 2.0 * tau};
}

DehnThurston cp_to_dt(const CollarParams& p) {
  const TriangleLengths t = invert_pi_delta(p);
  const double l = t.a;
  // tau = +-b, fixed by |l - tau| = c; ties toward tau >= 0.  All quantities
  // are plain combinations of p's halves and quarters, so genuine cone
  // points match to rounding accuracy (dyadic inputs exactly).
  const double miss_plus = std::abs(std::abs(l - t.b) - t.c);
  const double miss_minus = std::abs(std::abs(l + t.b) - t.c);
  const double eps = std::numeric_limits<double>::epsilon();
  const double allow = 32.0 * eps * (1.0 + std::abs(l) + t.b + t.c);
  const double best = std::min(miss_plus, miss_minus);
  if (best > allow) {
    throw Inconsistent(
        "cp_to_dt: neither twist sign reproduces the third component "
        "(mismatch " +
        std::to_string(best) + ")");
  }
  const double tau = (miss_plus <= miss_minus) ? t.b : -t.b;
  return {2.0 * l, 2.0 * tau};
}

double fn_dt_degeneration_gap(const FenchelNielsen& fn) {
  const CollarParams hyp = fn_to_cp(fn);
  const CollarParams fol = dt_to_cp({fn.two_ell, fn.two_tau});
  return std::hypot(hyp.x - fol.x, hyp.y - fol.y);
}

}  // namespace collar
