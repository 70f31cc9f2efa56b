#include "collar/foliations.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include "collar/errors.hpp"
#include "collar/geometry.hpp"
#include "collar/metric.hpp"

namespace collar {

namespace {

void require_finite(double v, const char* who) {
  if (!std::isfinite(v)) {
    throw OutOfDomain(std::string(who) + ": input must be finite");
  }
}

}  // namespace

const char* to_string(ShortsTag tag) {
  switch (tag) {
    case ShortsTag::AllZero:
      return "ALL_ZERO";
    case ShortsTag::OnePositive:
      return "ONE_POSITIVE";
    case ShortsTag::PairEqualOneZero:
      return "PAIR_EQUAL_ONE_ZERO";
    case ShortsTag::PairUnequalOneZero:
      return "PAIR_UNEQUAL_ONE_ZERO";
    case ShortsTag::Dominant:
      return "DOMINANT";
    case ShortsTag::DegenerateSum:
      return "DEGENERATE_SUM";
    case ShortsTag::Interior:
      return "INTERIOR";
  }
  return "UNKNOWN";
}

LinearFoliation foliation_from_lengths(const TriangleLengths& t,
                                       const Tolerance& tol) {
  require_finite(t.a, "foliation_from_lengths");
  require_finite(t.b, "foliation_from_lengths");
  require_finite(t.c, "foliation_from_lengths");
  if (!in_Delta(t, tol)) {
    throw NotInDelta("foliation_from_lengths");
  }
  // On the cone exactly one of c = a + b and c = |a - b| holds, except where
  // min(a, b) = 0 (both hold).  Pick whichever the triple realizes better;
  // the non-strict comparison sends ties — including the zero triple — to +1.
  const double miss_plus = std::abs(t.a + t.b - t.c);
  const double miss_minus = std::abs(std::abs(t.a - t.b) - t.c);
  return {t, miss_plus <= miss_minus ? 1 : -1};
}

double transverse_measure(const LinearFoliation& f, const Polyline& path) {
  if (path.size() < 2) {
    return 0.0;
  }
  const double wx = f.coeff_x();
  const double wy = f.coeff_y();
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const Eigen::Vector2d d = path[i + 1] - path[i];
    total += std::abs(wx * d.x() + wy * d.y());
  }
  return total;
}

ShortsCase classify_shorts(const ShortsMeasures& m) {
  const std::array<double, 3> v = {m.m1, m.m2, m.m3};
  for (double x : v) {
    require_finite(x, "classify_shorts");
    if (x < 0.0) {
      throw NegativeMeasure("classify_shorts");
    }
  }
  ShortsCase out;
  std::stable_sort(out.permutation.begin(), out.permutation.end(),
                   [&](int i, int j) { return v[i] > v[j]; });
  const double s1 = v[out.permutation[0]];
  const double s2 = v[out.permutation[1]];
  const double s3 = v[out.permutation[2]];
  if (s1 == 0.0) {
    out.tag = ShortsTag::AllZero;
  } else if (s2 == 0.0) {
    out.tag = ShortsTag::OnePositive;
  } else if (s3 == 0.0) {
    out.tag = s1 == s2 ? ShortsTag::PairEqualOneZero
                       : ShortsTag::PairUnequalOneZero;
  } else if (s1 > s2 + s3) {
    out.tag = ShortsTag::Dominant;
  } else if (s1 == s2 + s3) {
    out.tag = ShortsTag::DegenerateSum;
  } else {
    out.tag = ShortsTag::Interior;
  }
  return out;
}

std::array<double, 3> boundary_measures(const ShortsCase& c,
                                        const ShortsMeasures& m) {
  const ShortsCase fresh = classify_shorts(m);
  if (fresh.tag != c.tag || fresh.permutation != c.permutation) {
    throw Inconsistent("boundary_measures: case does not classify m");
  }
  return {m.m1, m.m2, m.m3};
}

double annulus_defect_vs_metric(const CollarParams& p, double y,
                                const Tolerance& tol) {
  const CollarMetric m = make_metric(invert_pi_H(p, tol), tol);
  const MetricTensorValue g = tensor_at(m, 0.0, y);
  const LinearFoliation f = foliation_from_lengths(invert_pi_delta(p), tol);
  const double wx = f.coeff_x();
  const double wy = f.coeff_y();
  Eigen::Matrix2d diff;
  diff << g.E - wx * wx, g.F - wx * wy, g.F - wx * wy, g.G - wy * wy;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(diff,
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace collar
