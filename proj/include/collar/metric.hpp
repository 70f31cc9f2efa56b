#pragma once

// The explicit hyperbolic metric carried by a collar with half-width triple
// (a,b,c), pulled back to the covering strip R x [-1,1]:
//
//   ds^2 = (a^2 + (a/sinh a)^2 (sinh(by)/sinh b)^2) dx^2
//          +- 2ab sqrt(1 - (1/(sinh a sinh b))^2) dx dy + b^2 dy^2,
//
// rotation-invariant in x with period 2.  The core circle is y = 0, the
// boundary is y = +-1, and the metric stays within operator distance 2 of
// the constant comparison form (a dx +- b dy)^2.

#include <functional>
#include <vector>

#include <Eigen/Core>

#include "collar/errors.hpp"
#include "collar/types.hpp"

namespace collar {

// A collar-surface triple with its derived metric data.
struct CollarMetric {
  TriangleLengths lengths;  // must satisfy the collar equation
  int sign = -1;            // +1 iff cosh c >= cosh a cosh b
  double h = 0.0;           // boundary half-length a coth a
  double kappa = 0.0;       // collar depth arcsinh(1/sinh a)
};

// Validates surface membership (scale-aware tolerance), fixes the cross-term
// sign, and fills the derived fields.  Throws NotOnH.
CollarMetric make_metric(const TriangleLengths& t, const Tolerance& tol = {});

// Coefficients of ds^2 = E dx^2 + 2F dx dy + G dy^2 at one point.
struct MetricTensorValue {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
};

// Tensor at (x, y); constant in x (rotational invariance) and positive
// definite on the whole strip.  Throws OutOfDomain if |y| > 1, NotOnH if the
// metric's triple has drifted off the surface.
MetricTensorValue tensor_at(const CollarMetric& m, double x, double y);

// Piecewise-linear path in the strip.
using Polyline = std::vector<Eigen::Vector2d>;

// Length of the polyline under the metric: composite Simpson quadrature
// with n_sub subdivisions per segment (rounded up to even).  Deterministic.
double curve_length(const CollarMetric& m, const Polyline& path,
                    int n_sub = 64);

// Arbitrary tensor field on the strip, for curvature verification.
using TensorField = std::function<MetricTensorValue(double, double)>;

// Gaussian curvature of a tensor field at (x, y) by the Brioschi formula
// with central finite differences of spacing `step`.
double gaussian_curvature_fd(const TensorField& field, double x, double y,
                             double step);

// Finite-difference Gaussian curvature of the collar metric at height y;
// expected -1 everywhere.  Throws StepTooLarge unless |y| + 2*step <= 1.
double gaussian_curvature(const CollarMetric& m, double y, double step);

// Operator norm of ds^2 - (a dx + sign b dy)^2 at height y, as a symmetric
// 2x2 matrix in (dx, dy); bounded by 2 across the strip.
double comparison_defect(const CollarMetric& m, double y);

// Numerical minimum length over descending lattice paths from (0,1) to the
// core line y = 0: dynamic programming over an n_grid lattice followed by
// per-vertex golden-section refinement.  Expected kappa (the collar depth).
// Throws GridTooCoarse if the refinement fails to stabilize.
double depth_check(const CollarMetric& m, int n_grid);

}  // namespace collar
