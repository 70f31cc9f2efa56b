#pragma once

#include <Eigen/Core>

namespace collar {

// Ordered triple (a, b, c) of nonnegative side lengths of the reference
// triangle on the annulus.  Depending on context the triple lives on the
// collar surface (cosh^2 a + cosh^2 b + cosh^2 c = 2 cosh a cosh b cosh c,
// strictly positive entries) or on the triangle-equality cone
// (a + b + c = 2 max{a,b,c}, nonnegative entries).
struct TriangleLengths {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  Eigen::Vector3d vec() const { return {a, b, c}; }
  static TriangleLengths from_vec(const Eigen::Vector3d& v) {
    return {v.x(), v.y(), v.z()};
  }
  double max() const { return vec().maxCoeff(); }
  double sum() const { return a + b + c; }
};

// Point (x, y) in the collar-parameter plane, the image of a triple under
// the projection (a,b,c) |-> (4a-2b-2c, 2b-2c).
struct CollarParams {
  double x = 0.0;
  double y = 0.0;

  Eigen::Vector2d vec() const { return {x, y}; }
  static CollarParams from_vec(const Eigen::Vector2d& v) {
    return {v.x(), v.y()};
  }
};

// Accuracy targets shared by the numerical kernels.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_iter = 200;
};

}  // namespace collar
