#pragma once

// Self-checking property suites over fuzzed inputs: each suite draws its
// samples from a deterministic stream (seed in, bytes out — identical runs
// produce identical reports) and records the worst residual seen per
// property next to the tolerance it was judged against.

#include <cstdint>
#include <string>
#include <vector>

#include "collar/types.hpp"

namespace collar {

// Deterministic uniform generator for the fuzzed suites: a splitmix64
// stream mapped to doubles in [0, 1) through the top 53 bits.
class FuzzRng {
 public:
  explicit FuzzRng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  double uniform();                      // in [0, 1)
  double uniform(double lo, double hi);  // in [lo, hi)

 private:
  std::uint64_t state_;
};

// One property checked over fuzzed cases.  `worst` is the extreme residual
// measured (property-specific, stated in the name's terms) and `tolerance`
// the threshold it was compared against; `pass` records the comparison,
// whose direction depends on the property (bounds vs positivity).
struct PropertyResult {
  std::string name;
  int cases = 0;
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// A named suite of properties; `pass` is the conjunction.
struct SuiteReport {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  std::vector<PropertyResult> properties;
  bool pass = false;
};

// Runs one of the named suites over n_cases fuzzed samples each:
//
//   metric     curvature == -1, comparison bound, positive definiteness,
//              boundary period 2a coth a, descent depth == kappa
//   traces     generator traces hit (2cosh a, 2cosh b, 2cosh c), the
//              commutator trace is -2 on the surface, and the general
//              commutator/residual identity holds off it
//   roundtrip  the plane inversions, theta, and both coordinate charts
//              return to their inputs
//   limits     normalized word lengths along rays converge to the foliation
//              values with shrinking Cauchy gaps, the commutator is refused
//              everywhere, and the two coordinate charts merge along rays
//   all        all of the above, in that order
//
// `tol` feeds the numerical kernels (fiber solves, membership checks); the
// per-property thresholds are pinned constants.  Throws OutOfDomain for an
// unknown suite name or a nonpositive case count.  Expensive properties cap
// their own case count (recorded in the result) to keep runtime bounded.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed,
                      int n_cases, const Tolerance& tol = {});

}  // namespace collar
