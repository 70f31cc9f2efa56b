#include "collar/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "collar/errors.hpp"
#include "collar/foliations.hpp"
#include "collar/geometry.hpp"

namespace collar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

// log(2^-52), the unit roundoff exponent for doubles.
constexpr double kLogEps = -36.043653389117154;

// Log of the absolute rounding error committed by representing v in
// sign-and-log form: the stored exponent is off by ~eps * |lg|, so the
// value is off by ~|v| * eps * (1 + |lg|).
double value_rounding(const SignedLog& v) {
  if (v.sgn == 0) {
    return -kInf;
  }
  return v.lg + kLogEps + std::log1p(std::abs(v.lg));
}

// Log of the absolute error bound of the product x * y when the factors
// carry log-domain absolute bounds xe, ye: |x| e^{ye} + e^{xe} |y| +
// e^{xe} e^{ye} plus the product's own rounding.
double term_error(const SignedLog& x, double xe, const SignedLog& y,
                  double ye) {
  double e = log_add_exp(xe + y.lg, x.lg + ye);
  e = log_add_exp(e, xe + ye);
  return log_add_exp(e, value_rounding(x * y));
}

// An element within this of parabolic (|trace| = 2) is reported as
// NotHyperbolic rather than assigned a near-zero length; matches the
// relative slack on |trace|/2 across both half-length overloads.
constexpr double kParabolicSlack = 1e-12;

void require_finite(const TriangleLengths& t, const char* who) {
  if (!(std::isfinite(t.a) && std::isfinite(t.b) && std::isfinite(t.c))) {
    throw OutOfDomain(std::string(who) + ": lengths must be finite");
  }
}

char inverse_letter(char c) {
  switch (c) {
    case 'a':
      return 'A';
    case 'A':
      return 'a';
    case 'b':
      return 'B';
    default:
      return 'b';
  }
}

void require_word(const TorusWord& w) {
  for (char c : w.letters) {
    if (c != 'a' && c != 'A' && c != 'b' && c != 'B') {
      throw WordParseError();
    }
  }
}

// Inverse of a unit-determinant 2x2 matrix, division-free.
Eigen::Matrix2d adjugate(const Eigen::Matrix2d& m) {
  Eigen::Matrix2d r;
  r << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return r;
}

const ScaledMatrix2& pick_generator(const ScaledHolonomy& h, char c) {
  switch (c) {
    case 'a':
      return h.A;
    case 'A':
      return h.A_inv;
    case 'b':
      return h.B;
    default:
      return h.B_inv;
  }
}

}  // namespace

TorusWord TorusWord::parse(std::string_view text) {
  TorusWord w{std::string(text)};
  require_word(w);
  return w;
}

TorusWord cyclic_reduction(const TorusWord& w) {
  require_word(w);
  std::string r;
  r.reserve(w.letters.size());
  for (char c : w.letters) {
    if (!r.empty() && r.back() == inverse_letter(c)) {
      r.pop_back();
    } else {
      r.push_back(c);
    }
  }
  while (r.size() >= 2 && r.front() == inverse_letter(r.back())) {
    r.erase(r.begin());
    r.pop_back();
  }
  return {std::move(r)};
}

int word_length(const TorusWord& w) {
  return static_cast<int>(cyclic_reduction(w).letters.size());
}

std::pair<int, int> abelianization(const TorusWord& w) {
  require_word(w);
  int p = 0, q = 0;
  for (char c : w.letters) {
    p += (c == 'a') - (c == 'A');
    q += (c == 'b') - (c == 'B');
  }
  return {p, q};
}

HolonomyPair holonomy_from_any_lengths(const TriangleLengths& t) {
  require_finite(t, "holonomy_from_any_lengths");
  if (t.a < 0.0 || t.b < 0.0 || t.c < 0.0) {
    throw NegativeLength("holonomy_from_any_lengths");
  }
  if (t.a == 0.0) {
    throw DegenerateA();
  }
  const double p =
      (std::cosh(t.c) - std::exp(-t.a) * std::cosh(t.b)) / std::sinh(t.a);
  const double s = 2.0 * std::cosh(t.b) - p;
  HolonomyPair h;
  h.A << std::exp(t.a), 0.0, 0.0, std::exp(-t.a);
  h.B << p, 1.0, p * s - 1.0, s;
  if (!h.A.allFinite() || !h.B.allFinite()) {
    throw DomainTooLarge(
        "holonomy_from_any_lengths: entries overflow doubles; use "
        "scaled_holonomy_from_lengths");
  }
  return h;
}

HolonomyPair holonomy_from_lengths(const TriangleLengths& t,
                                   const Tolerance& tol) {
  require_on_surface(t, tol, "holonomy_from_lengths");
  return holonomy_from_any_lengths(t);
}

ScaledMatrix2 ScaledMatrix2::of(const Eigen::Matrix2d& raw) {
  if (!raw.allFinite()) {
    throw OutOfDomain("ScaledMatrix2: entries must be finite");
  }
  ScaledMatrix2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out.e[i][j] = SignedLog::of(raw(i, j));
      out.err[i][j] = value_rounding(out.e[i][j]);
    }
  }
  return out;
}

ScaledMatrix2 ScaledMatrix2::identity() {
  ScaledMatrix2 out;
  out.e[0][0] = SignedLog::from_log(0.0, 1);
  out.e[1][1] = SignedLog::from_log(0.0, 1);
  return out;
}

ScaledMatrix2 operator*(const ScaledMatrix2& x, const ScaledMatrix2& y) {
  ScaledMatrix2 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const SignedLog t0 = x.e[i][0] * y.e[0][j];
      const SignedLog t1 = x.e[i][1] * y.e[1][j];
      const SignedLog s = sl_add(t0, t1);
      out.e[i][j] = s;
      // Absolute bounds add through a sum, so an entry produced by
      // cancellation of large terms keeps the large bound (it is noise),
      // while a merely small entry keeps a small one.  An exact zero from
      // s keeps whatever noise the terms carried.
      double err = log_add_exp(
          term_error(x.e[i][0], x.err[i][0], y.e[0][j], y.err[0][j]),
          term_error(x.e[i][1], x.err[i][1], y.e[1][j], y.err[1][j]));
      out.err[i][j] = log_add_exp(err, value_rounding(s));
    }
  }
  return out;
}

SignedLog trace_signed_log(const ScaledMatrix2& x) {
  return sl_add(x.e[0][0], x.e[1][1]);
}

ScaledHolonomy scaled_holonomy_from_lengths(const TriangleLengths& t,
                                            const Tolerance& tol) {
  require_on_surface(t, tol, "scaled_holonomy_from_lengths");

  const double lsa = log_sinh(t.a);
  const double lcb = log_cosh(t.b);
  const double lcc = log_cosh(t.c);

  // Two routes to log p, each ill-conditioned exactly where the other is
  // clean, so pick by measured precision loss (in nats relative to the
  // eps * (1 + components) floor of the log-domain inputs):
  //
  //   * literal:  p = (cosh c - e^{-a} cosh b)/sinh a.  The subtrahends
  //     nearly cancel when b exceeds a + (the c-side of the surface); the
  //     loss is exactly the nats reported by log_sub_exp.
  //   * sum form:  {p, s} = cosh b +- u with u = sqrt(sinh^2 a sinh^2 b
  //     - 1)/sinh a (nonnegative on the surface, zero exactly where
  //     cosh c = cosh a cosh b), p on the + branch iff
  //     p - cosh b = (cosh c - cosh a cosh b)/sinh a >= 0.  The square
  //     root halves the precision of sinh^2 a sinh^2 b - 1, which is lost
  //     near that same boundary where the literal form is exact.
  //
  // The regimes cannot overlap: the literal form cancels only when
  // e^{-a} cosh b is close to cosh c >= 1, which forces sinh a sinh b to
  // be huge, and then the sum form is clean.
  double loss_literal = kInf;
  double log_p_literal = 0.0;
  if (lcc >= lcb - t.a) {
    log_p_literal = log_sub_exp(lcc, lcb - t.a, &loss_literal) - lsa;
  }
  const double k2 = 2.0 * (lsa + log_sinh(t.b));
  const double loss_sum =
      (k2 > 0.0) ? std::max(0.0, -0.5 * std::log(k2)) : kInf;

  double log_p = 0.0;
  double loss = 0.0;
  if (loss_literal <= loss_sum) {
    log_p = log_p_literal;
    loss = loss_literal;
  } else {
    const double log_u = 0.5 * log_sub_exp(k2, 0.0) - lsa;
    const bool p_is_big = lcc >= log_cosh(t.a) + lcb;
    const double log_big = log_add_exp(lcb, log_u);
    log_p = p_is_big ? log_big : 2.0 * log_coth(t.a) - log_big;
    loss = loss_sum;
  }
  // p s - 1 = 1/sinh^2 a on the surface, so s = coth^2 a / p: division
  // never cancels, whichever route produced p.
  const double log_s = 2.0 * log_coth(t.a) - log_p;
  const double log_r = -2.0 * lsa;  // p s - 1

  // Log-domain inputs carry absolute error of a few eps times their
  // magnitude, which exponentiation turns into relative entry error,
  // inflated by whatever the chosen p-route lost; kept as a log so an
  // infinite loss saturates instead of overflowing.
  const double log_rel = std::log(8.0 * kEps * (1.0 + t.a + t.b + t.c)) +
                         std::min(loss, 700.0);

  ScaledHolonomy h;

  // diag(e^a, e^-a) and its inverse are exact in sign-and-log form.
  h.A.e[0][0] = SignedLog::from_log(t.a, 1);
  h.A.e[1][1] = SignedLog::from_log(-t.a, 1);
  h.A_inv.e[0][0] = SignedLog::from_log(-t.a, 1);
  h.A_inv.e[1][1] = SignedLog::from_log(t.a, 1);

  h.B.e[0][0] = SignedLog::from_log(log_p, 1);
  h.B.e[0][1] = SignedLog::from_log(0.0, 1);
  h.B.e[1][0] = SignedLog::from_log(log_r, 1);
  h.B.e[1][1] = SignedLog::from_log(log_s, 1);
  h.B.err[0][0] = log_p + log_rel;
  h.B.err[1][0] = log_r + log_rel;
  h.B.err[1][1] = log_s + log_rel;

  // B has unit determinant, so its inverse is the adjugate.
  h.B_inv.e[0][0] = SignedLog::from_log(log_s, 1);
  h.B_inv.e[0][1] = SignedLog::from_log(0.0, -1);
  h.B_inv.e[1][0] = SignedLog::from_log(log_r, -1);
  h.B_inv.e[1][1] = SignedLog::from_log(log_p, 1);
  h.B_inv.err[0][0] = log_s + log_rel;
  h.B_inv.err[1][0] = log_r + log_rel;
  h.B_inv.err[1][1] = log_p + log_rel;

  return h;
}

Eigen::Matrix2d word_matrix(const HolonomyPair& h, const TorusWord& w) {
  const TorusWord r = cyclic_reduction(w);
  const Eigen::Matrix2d a_inv = adjugate(h.A);
  const Eigen::Matrix2d b_inv = adjugate(h.B);
  Eigen::Matrix2d m = Eigen::Matrix2d::Identity();
  for (char c : r.letters) {
    switch (c) {
      case 'a':
        m = m * h.A;
        break;
      case 'A':
        m = m * a_inv;
        break;
      case 'b':
        m = m * h.B;
        break;
      default:
        m = m * b_inv;
        break;
    }
  }
  return m;
}

ScaledMatrix2 word_matrix(const ScaledHolonomy& h, const TorusWord& w) {
  const TorusWord r = cyclic_reduction(w);
  ScaledMatrix2 m = ScaledMatrix2::identity();
  for (char c : r.letters) {
    m = m * pick_generator(h, c);
  }
  return m;
}

double word_trace(const HolonomyPair& h, const TorusWord& w) {
  return word_matrix(h, w).trace();
}

SignedLog word_trace_log(const ScaledHolonomy& h, const TorusWord& w) {
  return trace_signed_log(word_matrix(h, w));
}

double geodesic_half_length(const HolonomyPair& h, const TorusWord& w) {
  const double tr = word_trace(h, w);
  if (!std::isfinite(tr)) {
    throw DomainTooLarge(
        "geodesic_half_length: trace overflows doubles; use the scaled "
        "holonomy");
  }
  const double u = 0.5 * std::abs(tr) - 1.0;
  if (u <= 2.0 * kParabolicSlack) {
    throw NotHyperbolic();
  }
  return acosh_1p(u);
}

double geodesic_half_length(const ScaledHolonomy& h, const TorusWord& w) {
  const ScaledMatrix2 m = word_matrix(h, w);
  const SignedLog tr = sl_add(m.e[0][0], m.e[1][1]);
  double tr_err = log_add_exp(m.err[0][0], m.err[1][1]);
  tr_err = log_add_exp(tr_err, value_rounding(tr));
  // A trace buried in its own roundoff carries no sign information at all;
  // the commutator of a long product lands here (its diagonal cancels to
  // order 1 out of entries exponentially larger).
  if (tr.sgn == 0 || tr.lg <= tr_err + 2.0 * kLn2) {
    throw NotHyperbolic("trace is below its accumulated roundoff bound");
  }
  const double rel = std::exp(tr_err - tr.lg);
  const double L = tr.lg - kLn2;
  if (L <= std::max(kParabolicSlack, 4.0 * rel)) {
    throw NotHyperbolic();
  }
  return acosh_from_log(L);
}

double foliation_half_length(const CollarParams& p, const TorusWord& w) {
  const auto [wa, wb] = abelianization(w);
  if (std::abs(wa) > 3 || std::abs(wb) > 3) {
    throw UnsupportedWord();
  }
  const LinearFoliation f = foliation_from_lengths(invert_pi_delta(p));
  return transverse_measure(
      f, {{0.0, 0.0}, {static_cast<double>(wa), static_cast<double>(wb)}});
}

std::vector<RayLimitSample> ray_limit_experiment(
    const CollarParams& p, const TorusWord& w,
    const std::vector<double>& t_values, const Tolerance& tol) {
  if (!(std::isfinite(p.x) && std::isfinite(p.y)) ||
      (p.x == 0.0 && p.y == 0.0)) {
    throw OutOfDomain(
        "ray_limit_experiment: direction must be finite and nonzero");
  }
  double prev = 0.0;
  for (double t : t_values) {
    if (!std::isfinite(t) || !(t > prev)) {
      throw OutOfDomain(
          "ray_limit_experiment: t values must be finite, positive, and "
          "strictly increasing");
    }
    prev = t;
  }
  const TorusWord r = cyclic_reduction(w);

  std::vector<RayLimitSample> out;
  out.reserve(t_values.size());
  for (double t : t_values) {
    const TriangleLengths tri = invert_pi_H({t * p.x, t * p.y}, tol);
    const ScaledHolonomy h = scaled_holonomy_from_lengths(tri, tol);
    RayLimitSample sample;
    sample.t = t;
    try {
      sample.normalized_length = geodesic_half_length(h, r) / t;
      sample.hyperbolic = true;
    } catch (const NotHyperbolic&) {
      sample.normalized_length = std::numeric_limits<double>::quiet_NaN();
      sample.hyperbolic = false;
    }
    out.push_back(sample);
  }
  return out;
}

TriangleLengths theta_roundtrip(const TriangleLengths& t,
                                const Tolerance& tol) {
  const ScaledHolonomy h = scaled_holonomy_from_lengths(t, tol);
  return {geodesic_half_length(h, TorusWord{"a"}),
          geodesic_half_length(h, TorusWord{"b"}),
          geodesic_half_length(h, TorusWord{"ab"})};
}

}  // namespace collar
