#pragma once

#include <array>

#include "collar/metric.hpp"
#include "collar/types.hpp"

namespace collar {

// Constant-coefficient 1-form  omega = a dx + sign * b dy  attached to a
// cone triple: integrating |omega| along the three reference-triangle sides
// returns exactly (a, b, c).
struct LinearFoliation {
  TriangleLengths lengths;
  int sign = 1;  // +1 iff c = a + b (ties resolve to +1), else c = |a - b|

  double coeff_x() const { return lengths.a; }
  double coeff_y() const { return sign * lengths.b; }
};

// Nonnegative transverse measures of the three boundary circles of a
// three-holed sphere ("shorts").
struct ShortsMeasures {
  double m1 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
};

// Mutually exclusive standard-foliation cases of a measure triple, decided
// after sorting the measures descending.
enum class ShortsTag {
  AllZero,             // every measure zero
  OnePositive,         // exactly one measure nonzero
  PairEqualOneZero,    // smallest zero, the other two equal (positive)
  PairUnequalOneZero,  // smallest zero, the other two distinct (positive)
  Dominant,            // all positive, max > sum of the others
  DegenerateSum,       // all positive, max = sum of the others
  Interior,            // all positive, strict triangle inequality
};

// Canonical ALL_CAPS spelling of a tag (stable CLI/report vocabulary).
const char* to_string(ShortsTag tag);

struct ShortsCase {
  ShortsTag tag = ShortsTag::AllZero;
  // sorted[k] = measures[permutation[k]], descending; the sort is stable, so
  // ties keep input order (index 0 before 1 before 2).
  std::array<int, 3> permutation = {0, 1, 2};
};

// Attaches the 1-form to a cone triple, deciding the sign from whichever of
// the two cone equalities (c = a + b vs c = |a - b|) the triple realizes.
// Throws NotInDelta off the cone, OutOfDomain on nonfinite input.
LinearFoliation foliation_from_lengths(const TriangleLengths& t,
                                       const Tolerance& tol = {});

// Total variation of omega along a polyline: sum over straight segments of
// |a dx + sign * b dy|, which is exact because the form has constant
// coefficients.  Fewer than two vertices measure zero.
double transverse_measure(const LinearFoliation& f, const Polyline& path);

// Sorts the measures descending (stable; permutation recorded) and assigns
// the unique matching tag.  Throws NegativeMeasure / OutOfDomain.
ShortsCase classify_shorts(const ShortsMeasures& m);

// The boundary measures the standard foliation of the given case realizes:
// identically (m1, m2, m3).  Exists as the single consistency gate for
// downstream gluing; throws Inconsistent when the case does not classify m.
std::array<double, 3> boundary_measures(const ShortsCase& c,
                                        const ShortsMeasures& m);

// Operator-norm difference at height y between the annulus metric over the
// collar-surface fiber of p and the squared 1-form over the cone fiber of
// the same p.  Quantifies how far the two structures attached to one
// parameter point have drifted apart; both fibers merge as p recedes.
double annulus_defect_vs_metric(const CollarParams& p, double y,
                                const Tolerance& tol = {});

}  // namespace collar
