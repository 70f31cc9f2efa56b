#include "collar/metric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "collar/geometry.hpp"
#include "collar/scalar.hpp"

namespace collar {

namespace {

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

// sinh(b*y)/sinh(b) for b > 0, |y| <= 1; log-space above the direct window.
double sinh_ratio(double b, double y) {
  if (b <= 30.0) {
    return std::sinh(b * y) / std::sinh(b);
  }
  if (y == 0.0) return 0.0;
  const double r = std::exp(log_sinh(b * std::abs(y)) - log_sinh(b));
  return (y < 0.0) ? -r : r;
}

// Tensor at height y without revalidating the metric (callers already did).
MetricTensorValue tensor_unchecked(const CollarMetric& m, double y) {
  const double a = m.lengths.a;
  const double b = m.lengths.b;
  const double slope = a / std::sinh(a);  // -> 0 for huge a, -> 1 for tiny
  const double ry = sinh_ratio(b, y);
  const double q = std::exp(-(log_sinh(a) + log_sinh(b)));  // <= 1 on H
  MetricTensorValue v;
  v.E = a * a + slope * slope * ry * ry;
  v.F = m.sign * a * b * std::sqrt(std::max(0.0, (1.0 - q) * (1.0 + q)));
  v.G = b * b;
  return v;
}

// Integrand of the length functional along the straight segment p0 -> p1 at
// parameter t, given the tensor there.
double speed(const MetricTensorValue& v, double dx, double dy) {
  return std::sqrt(v.E * dx * dx + 2.0 * v.F * dx * dy + v.G * dy * dy);
}

// Composite-Simpson weights: n even subdivisions, nodes 0..n.
double simpson_weight(int k, int n) {
  if (k == 0 || k == n) return 1.0;
  return (k % 2 == 1) ? 4.0 : 2.0;
}

}  // namespace

CollarMetric make_metric(const TriangleLengths& t, const Tolerance& tol) {
  require_on_surface(t, tol, "make_metric");
  CollarMetric m;
  m.lengths = t;
  // Compare cosh c with cosh a cosh b in the log domain so that huge
  // components cannot overflow; ties take the plus branch.
  m.sign = (log_cosh(t.c) >= log_cosh(t.a) + log_cosh(t.b)) ? 1 : -1;
  m.h = t.a / std::tanh(t.a);
  m.kappa = std::asinh(std::exp(-log_sinh(t.a)));
  return m;
}

MetricTensorValue tensor_at(const CollarMetric& m, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y) || std::abs(y) > 1.0) {
    throw OutOfDomain("tensor_at: require finite x and |y| <= 1");
  }
  require_on_surface(m.lengths, {}, "tensor_at");
  return tensor_unchecked(m, y);  // independent of x
}

double curve_length(const CollarMetric& m, const Polyline& path, int n_sub) {
  require_on_surface(m.lengths, {}, "curve_length");
  if (n_sub < 2) n_sub = 2;
  if (n_sub % 2 != 0) ++n_sub;
  for (const auto& p : path) {
    if (!p.allFinite() || std::abs(p.y()) > 1.0) {
      throw OutOfDomain("curve_length: path leaves the strip |y| <= 1");
    }
  }
  if (path.size() < 2) return 0.0;

  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.size(); ++s) {
    const double dx = path[s + 1].x() - path[s].x();
    const double dy = path[s + 1].y() - path[s].y();
    const double y0 = path[s].y();
    double acc = 0.0;
    for (int k = 0; k <= n_sub; ++k) {
      const double t = static_cast<double>(k) / n_sub;
      const MetricTensorValue v = tensor_unchecked(m, y0 + t * dy);
      acc += simpson_weight(k, n_sub) * speed(v, dx, dy);
    }
    total += acc / (3.0 * n_sub);
  }
  return total;
}

double gaussian_curvature_fd(const TensorField& field, double x, double y,
                             double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw OutOfDomain("gaussian_curvature_fd: step must be positive");
  }
  const double h = step;
  const MetricTensorValue c = field(x, y);
  const MetricTensorValue xp = field(x + h, y);
  const MetricTensorValue xm = field(x - h, y);
  const MetricTensorValue yp = field(x, y + h);
  const MetricTensorValue ym = field(x, y - h);
  const MetricTensorValue pp = field(x + h, y + h);
  const MetricTensorValue pm = field(x + h, y - h);
  const MetricTensorValue mp = field(x - h, y + h);
  const MetricTensorValue mm = field(x - h, y - h);

  const double E_x = (xp.E - xm.E) / (2.0 * h);
  const double E_y = (yp.E - ym.E) / (2.0 * h);
  const double F_x = (xp.F - xm.F) / (2.0 * h);
  const double F_y = (yp.F - ym.F) / (2.0 * h);
  const double G_x = (xp.G - xm.G) / (2.0 * h);
  const double G_y = (yp.G - ym.G) / (2.0 * h);
  const double E_yy = (yp.E - 2.0 * c.E + ym.E) / (h * h);
  const double G_xx = (xp.G - 2.0 * c.G + xm.G) / (h * h);
  const double F_xy = (pp.F - pm.F - mp.F + mm.F) / (4.0 * h * h);

  Eigen::Matrix3d A;
  A << -0.5 * E_yy + F_xy - 0.5 * G_xx, 0.5 * E_x, F_x - 0.5 * E_y,
      F_y - 0.5 * G_x, c.E, c.F,
      0.5 * G_y, c.F, c.G;
  Eigen::Matrix3d B;
  B << 0.0, 0.5 * E_y, 0.5 * G_x,
      0.5 * E_y, c.E, c.F,
      0.5 * G_x, c.F, c.G;

  const double det_g = c.E * c.G - c.F * c.F;
  return (A.determinant() - B.determinant()) / (det_g * det_g);
}

double gaussian_curvature(const CollarMetric& m, double y, double step) {
  require_on_surface(m.lengths, {}, "gaussian_curvature");
  if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(y)) {
    throw OutOfDomain("gaussian_curvature: require finite y and step > 0");
  }
  if (std::abs(y) + 2.0 * step > 1.0) {
    throw StepTooLarge("gaussian_curvature: stencil |y| + 2*step exceeds 1");
  }
  const TensorField field = [&m](double, double yy) {
    return tensor_unchecked(m, yy);
  };
  return gaussian_curvature_fd(field, 0.0, y, step);
}

double comparison_defect(const CollarMetric& m, double y) {
  require_on_surface(m.lengths, {}, "comparison_defect");
  if (!std::isfinite(y) || std::abs(y) > 1.0) {
    throw OutOfDomain("comparison_defect: require |y| <= 1");
  }
  const MetricTensorValue v = tensor_unchecked(m, y);
  const double a = m.lengths.a;
  const double b = m.lengths.b;
  Eigen::Matrix2d d;
  d << v.E - a * a, v.F - m.sign * a * b,
      v.F - m.sign * a * b, v.G - b * b;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(
      d, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double depth_check(const CollarMetric& m, int n_grid) {
  require_on_surface(m.lengths, {}, "depth_check");
  if (n_grid < 8) {
    throw GridTooCoarse("depth_check: need n_grid >= 8");
  }
  const int n = n_grid + (n_grid % 2);  // even, so x = 0 sits on the grid
  const double a = m.lengths.a;
  const double b = m.lengths.b;
  const MetricTensorValue flat = tensor_unchecked(m, 0.0);
  const double F = flat.F;  // constant in y
  const double G = flat.G;

  // The optimal slope satisfies |dx/dy| = |F|/E <= ab/a^2 = b/a, so the
  // total drift from x = 0 is at most b/a; cover it with margin.
  const double span = 1.1 * (b / a) + 0.1;
  const double dx_grid = 2.0 * span / n;
  auto x_at = [&](int i) { return dx_grid * (i - n / 2); };

  // Heights descend from the boundary y = 1 to the core y = 0 in n steps;
  // per level pair, E at the five Simpson nodes is shared by every
  // transition, making each candidate segment a handful of flops.
  const int kNodes = 4;  // Simpson subdivisions per lattice segment
  const double dy = -1.0 / n;
  std::vector<std::array<double, kNodes + 1>> Elev(n);
  for (int j = 0; j < n; ++j) {
    const double ytop = 1.0 - static_cast<double>(j) / n;
    for (int k = 0; k <= kNodes; ++k) {
      const double yy = ytop + dy * (static_cast<double>(k) / kNodes);
      Elev[j][k] = tensor_unchecked(m, yy).E;
    }
  }
  auto seg_len = [&](int j, double x0, double x1) {
    // Segment from (x0, y_j) to (x1, y_{j+1}).
    const double dx = x1 - x0;
    double acc = 0.0;
    for (int k = 0; k <= kNodes; ++k) {
      const double s2 =
          Elev[j][k] * dx * dx + 2.0 * F * dx * dy + G * dy * dy;
      acc += simpson_weight(k, kNodes) * std::sqrt(std::max(0.0, s2));
    }
    return acc / (3.0 * kNodes);
  };

  // Dynamic programming over the lattice, window +-3 columns per step
  // (slope capacity 3*dx_grid*n = 6.6*b/a + ..., above the drift bound).
  const int kWindow = 3;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(n + 1, inf);
  std::vector<std::vector<int>> from(n, std::vector<int>(n + 1, -1));
  cost[n / 2] = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<double> next(n + 1, inf);
    for (int i = 0; i <= n; ++i) {
      for (int di = -kWindow; di <= kWindow; ++di) {
        const int i0 = i + di;
        if (i0 < 0 || i0 > n || cost[i0] == inf) continue;
        const double cand = cost[i0] + seg_len(j, x_at(i0), x_at(i));
        if (cand < next[i]) {
          next[i] = cand;
          from[j][i] = i0;
        }
      }
    }
    cost.swap(next);
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (cost[i] < cost[best]) best = i;
  }

  // Backtrack the lattice path, then refine it locally. Because the
  // coefficients do not depend on x, each per-level displacement
  // d_j = x_{j+1} - x_j contributes seg_len(j, 0, d_j) independently of the
  // others (the start is pinned at x = 0, the end is free on the core), so
  // relaxing the displacements one segment at a time is a genuine descent
  // that decouples: one sweep of golden-section per segment reaches the
  // piecewise-linear optimum. The optimal displacement per level satisfies
  // |d*| = (|F|/E)|dy| <= (b/a)/n < dx_grid/2, so a window of +-2 grid steps
  // around the lattice seed always brackets it.
  std::vector<double> d(n);
  {
    int i = best;
    for (int j = n; j > 0; --j) {
      const int i0 = from[j - 1][i];
      d[j - 1] = x_at(i) - x_at(i0);
      i = i0;
    }
  }
  auto total_len = [&]() {
    double c = 0.0;
    for (int j = 0; j < n; ++j) c += seg_len(j, 0.0, d[j]);
    return c;
  };

  double len = total_len();
  bool stable = false;
  for (int sweep = 0; sweep < 64 && !stable; ++sweep) {
    for (int j = 0; j < n; ++j) {
      double lo = d[j] - 2.0 * dx_grid;
      double hi = d[j] + 2.0 * dx_grid;
      double x1 = hi - kGolden * (hi - lo);
      double x2 = lo + kGolden * (hi - lo);
      double f1 = seg_len(j, 0.0, x1);
      double f2 = seg_len(j, 0.0, x2);
      for (int it = 0; it < 48; ++it) {
        if (f1 <= f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - kGolden * (hi - lo);
          f1 = seg_len(j, 0.0, x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + kGolden * (hi - lo);
          f2 = seg_len(j, 0.0, x2);
        }
      }
      d[j] = 0.5 * (lo + hi);
    }
    const double improved = total_len();
    stable = (len - improved) <= 1e-12 * (1.0 + std::abs(improved));
    len = improved;
  }
  if (!stable) {
    throw GridTooCoarse(
        "depth_check: refinement failed to stabilize; increase n_grid");
  }
  return len;
}

}  // namespace collar
