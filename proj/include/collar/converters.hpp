#pragma once

// Conversions between the classical coordinates of a one-holed-torus collar
// and its collar parameters:
//
//   * Fenchel-Nielsen pairs (2l, 2tau), length and twist of a hyperbolic
//     structure, mapped through the triple
//       a = l,  b = arccosh(cosh(tau) coth l),  c = arccosh(cosh(l-tau) coth l),
//     which lands on the collar surface identically in (l, tau);
//   * Dehn-Thurston pairs (2l, 2tau), measure and twist of a measured
//     foliation, mapped through a = l, b = |tau|, c = |l-tau|, which lands
//     on the triangle-equality cone.
//
// Replacing coth l by 1 degenerates the first family into the second;
// fn_dt_degeneration_gap measures how far apart the two images sit in the
// collar-parameter plane.

#include "collar/errors.hpp"
#include "collar/types.hpp"

namespace collar {

// Length/twist coordinates of a hyperbolic structure, stored doubled.
struct FenchelNielsen {
  double two_ell = 0.0;  // 2l > 0
  double two_tau = 0.0;  // 2tau, any real
};

// Measure/twist coordinates of a measured foliation, stored doubled.
struct DehnThurston {
  double two_ell = 0.0;  // 2l >= 0
  double two_tau = 0.0;  // 2tau, any real
};

// Triple of collar half-widths carried by the hyperbolic structure
// (always on the collar surface).  Throws NonPositiveLength if l <= 0.
TriangleLengths fn_to_triangle(const FenchelNielsen& fn);

// project_pi of fn_to_triangle.
CollarParams fn_to_cp(const FenchelNielsen& fn);

// Triple of transverse measures carried by the foliation (always on the
// triangle-equality cone).  Throws NegativeLength if l < 0.
TriangleLengths dt_to_triangle(const DehnThurston& dt);

// project_pi of dt_to_triangle.
CollarParams dt_to_cp(const DehnThurston& dt);

// Inverse of fn_to_cp: recover (2l, 2tau) from collar parameters.  l is the
// first fiber component; |tau| comes from the b-equation and its sign from
// consistency with the c-equation (ties, i.e. tau = 0, return +0).
FenchelNielsen cp_to_fn(const CollarParams& p, const Tolerance& tol = {});

// Inverse of dt_to_cp: recover (2l, 2tau) from collar parameters.  The sign
// of tau is fixed by |l - tau| = c, ties resolved toward tau >= 0.  Throws
// Inconsistent if neither sign reproduces c to rounding accuracy (impossible
// for genuine cone points).
DehnThurston cp_to_dt(const CollarParams& p);

// Euclidean distance in the collar-parameter plane between the
// Fenchel-Nielsen image of (2l, 2tau) and the Dehn-Thurston image of the
// same pair; tends to zero along rays (t*l0, t*tau0) as t grows.
double fn_dt_degeneration_gap(const FenchelNielsen& fn);

}  // namespace collar
