#pragma once

// The two coordinate domains of the library and the projection linking them
// to the collar-parameter plane:
//
//   * the collar surface: positive triples with
//       cosh^2 a + cosh^2 b + cosh^2 c = 2 cosh a cosh b cosh c,
//     parameterizing hyperbolic collars;
//   * the triangle-equality cone: nonnegative triples with
//       a + b + c = 2 max{a,b,c},
//     parameterizing linear measured foliations on the annulus.
//
// The projection pi(a,b,c) = (4a-2b-2c, 2b-2c) restricts to a homeomorphism
// from each domain onto the plane; invert_pi_delta inverts it in closed form
// on the cone and invert_pi_H inverts it numerically on the surface.

#include <vector>

#include "collar/errors.hpp"
#include "collar/types.hpp"

namespace collar {

// cosh^2 a + cosh^2 b + cosh^2 c - 2 cosh a cosh b cosh c, evaluated in a
// factored log form above component size 30.  Zero exactly on the collar
// surface and exactly 1 everywhere on the triangle-equality cone.  Throws
// DomainTooLarge when the value itself exceeds double range (components
// beyond ~350); use collar_residual_scaled there instead.
double collar_residual(const TriangleLengths& t);

// collar_residual divided by cosh a cosh b cosh c; representable at every
// scale the fiber solver visits and the quantity all membership tolerances
// are measured against.
double collar_residual_scaled(const TriangleLengths& t);

// a + b + c - 2 max{a,b,c}; zero on the triangle-equality cone, positive
// for triples satisfying the strict triangle inequality.
double delta_residual(const TriangleLengths& t);

// Membership predicates.  in_H demands strictly positive components and a
// scaled residual below tol.abs_tol * (1 + 1/(cosh a cosh b cosh c));
// in_Delta demands nonnegative components and |delta_residual| within
// tol.abs_tol * (1 + a + b + c).
bool in_H(const TriangleLengths& t, const Tolerance& tol = {});
bool in_Delta(const TriangleLengths& t, const Tolerance& tol = {});

// Throws NotOnH (message prefixed by who) unless t is a finite positive
// triple whose scaled residual sits within
// max(tol.abs_tol, 64 eps (1 + a + b + c)) — the floor the fiber solver can
// actually achieve, so every invert_pi_H output passes at its own scale.
void require_on_surface(const TriangleLengths& t, const Tolerance& tol,
                        const char* who);

// The projection pi(a,b,c) = (4a - 2b - 2c, 2b - 2c).
CollarParams project_pi(const TriangleLengths& t);

// Closed-form inverse of pi on the triangle-equality cone.  Three regions,
// tested in the fixed order a-dominant, b-dominant, c-dominant; on region
// boundaries the formulas agree and the first passing test wins.
TriangleLengths invert_pi_delta(const CollarParams& p);

// Diagnostics from the one-dimensional fiber solve behind invert_pi_H.
struct SolveStats {
  int iterations = 0;
  double s = 0.0;               // perimeter a + b + c at the solution
  double scaled_residual = 0.0; // collar_residual_scaled at the solution
};

// Numerical inverse of pi on the collar surface: a safeguarded Newton
// iteration (bisection fallback) in the perimeter s = a + b + c along the
// fiber a = (x+2s)/6, b = (s-a)/2 + y/4, c = (s-a)/2 - y/4.  The bracket
// starts at the cone solution s_delta — where the scaled residual is
// provably positive — and expands upward until the sign flips.  When the
// components fit plain doubles a final Newton pass on a cancellation-free
// regrouping of the residual refines the perimeter to rounding level, so
// ill-conditioned readbacks downstream (twist near a short curve) stay
// accurate.  The origin is returned in closed form (a = b = c =
// arccosh(3/2)).
TriangleLengths invert_pi_H(const CollarParams& p, const Tolerance& tol = {},
                            SolveStats* stats = nullptr);

// n points of the image under pi of the slice {a+b+c = C} of the collar
// surface, ordered by angle around the centroid (which pi sends to the
// origin).  Throws EmptySection when the plane misses the surface: for
// C <= 2 by contract, and for 2 < C < 3*arccosh(3/2) because the perimeter
// attains its minimum at the symmetric point.
std::vector<CollarParams> cross_section(double C, int n,
                                        const Tolerance& tol = {});

}  // namespace collar
