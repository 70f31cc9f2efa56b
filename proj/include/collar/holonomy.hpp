#pragma once

#include <array>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "collar/scalar.hpp"
#include "collar/types.hpp"

namespace collar {

// Pair of unit-determinant 2x2 matrices generating a once-punctured-torus
// group: A is the holonomy of the first generator loop, B of the second,
// A*B of their product loop.  Traces realize 2cosh of the triple used to
// build the pair.
struct HolonomyPair {
  Eigen::Matrix2d A;
  Eigen::Matrix2d B;

  Eigen::Matrix2d product() const { return A * B; }
};

// Word in the two generator loops and their inverses, stored as validated
// letters: 'a' and 'A' for the first loop and its inverse, 'b' and 'B' for
// the second.  The empty word is the identity.
struct TorusWord {
  std::string letters;

  // Validates the letters; throws WordParseError on anything else.
  static TorusWord parse(std::string_view text);
};

// Removes adjacent and wrap-around inverse pairs until none remain; the
// result is the shortest representative of the conjugacy class reachable by
// free and cyclic cancellation.  Idempotent.
TorusWord cyclic_reduction(const TorusWord& w);

// Letter count of the cyclic reduction.
int word_length(const TorusWord& w);

// Signed letter counts (first-loop count, second-loop count); unchanged by
// reduction.
std::pair<int, int> abelianization(const TorusWord& w);

// Builds the holonomy pair A = diag(e^a, e^{-a}),
// B = [[p, 1], [p s - 1, s]] with p = (cosh c - e^{-a} cosh b)/sinh a and
// s = 2 cosh b - p, from any positive triple; trace targets
// tr A = 2 cosh a, tr B = 2 cosh b, tr AB = 2 cosh c hold by construction
// whether or not the triple satisfies the collar equation.
// Throws DegenerateA at a = 0, NegativeLength, OutOfDomain.
HolonomyPair holonomy_from_any_lengths(const TriangleLengths& t);

// Same construction restricted to collar-surface triples (throws NotOnH
// otherwise), where the pair is a discrete faithful representation.
HolonomyPair holonomy_from_lengths(const TriangleLengths& t,
                                   const Tolerance& tol = {});

// 2x2 matrix whose entries are sign-and-log numbers, each with its own
// log-domain absolute error bound: entry (i,j) is e[i][j], with
// |true - represented| <= exp(err[i][j]) (err = -inf means exact).  Every
// entry carries its own scale, so one matrix can hold entries whose ratios
// exceed the double exponent range, and products formed with sl_add inflate
// the bound exactly where terms cancel: a small entry that is merely small
// stays trusted while one produced by cancellation of large terms is
// marked as noise.
struct ScaledMatrix2 {
  static constexpr double kNoErr = -std::numeric_limits<double>::infinity();

  std::array<std::array<SignedLog, 2>, 2> e{};
  std::array<std::array<double, 2>, 2> err{{{kNoErr, kNoErr},
                                            {kNoErr, kNoErr}}};

  static ScaledMatrix2 of(const Eigen::Matrix2d& raw);
  static ScaledMatrix2 identity();
};

// Product in the log domain with entrywise error-bound propagation.
ScaledMatrix2 operator*(const ScaledMatrix2& x, const ScaledMatrix2& y);

// Trace as a sign-and-log number (its error bound is NOT folded in; read
// log_add_exp(err[0][0], err[1][1]) off the matrix that produced it).
SignedLog trace_signed_log(const ScaledMatrix2& x);

// The four generator matrices of a collar-surface holonomy pair in scaled
// form, built entirely in the log domain so triples with components in the
// thousands stay representable.  On the surface the entries of B collapse
// to closed forms — {p, s} = cosh b +- sqrt(sinh^2 a sinh^2 b - 1)/sinh a
// (assigned by which side of cosh c = cosh a cosh b the triple lies on) and
// p s - 1 = 1/sinh^2 a — all positive, so nothing here ever cancels.
struct ScaledHolonomy {
  ScaledMatrix2 A;
  ScaledMatrix2 A_inv;
  ScaledMatrix2 B;
  ScaledMatrix2 B_inv;
};

ScaledHolonomy scaled_holonomy_from_lengths(const TriangleLengths& t,
                                            const Tolerance& tol = {});

// Matrix of the cyclically-reduced word (identity for the empty word).
Eigen::Matrix2d word_matrix(const HolonomyPair& h, const TorusWord& w);
ScaledMatrix2 word_matrix(const ScaledHolonomy& h, const TorusWord& w);

// Trace of the cyclically-reduced word's matrix.
double word_trace(const HolonomyPair& h, const TorusWord& w);
SignedLog word_trace_log(const ScaledHolonomy& h, const TorusWord& w);

// arccosh(|tr|/2) of the word's matrix: half the translation length of a
// hyperbolic element.  Throws NotHyperbolic when |tr| <= 2 (parabolic or
// elliptic — the commutator lands here by design) or, on the scaled
// overload, when the trace has sunk below its accumulated error bound.
// The plain overload throws DomainTooLarge if the trace overflows doubles.
double geodesic_half_length(const HolonomyPair& h, const TorusWord& w);
double geodesic_half_length(const ScaledHolonomy& h, const TorusWord& w);

// Transverse measure of the word's straight abelianized representative
// under the linear foliation attached to the cone fiber of p.  Restricted
// to |signed letter counts| <= 3 (UnsupportedWord beyond).
double foliation_half_length(const CollarParams& p, const TorusWord& w);

// Half-length of the word at the surface fiber over t_value * p, divided by
// t_value.  hyperbolic = false marks entries where the word's trace was not
// resolvably above 2 (normalized_length is NaN there).
struct RayLimitSample {
  double t = 0.0;
  double normalized_length = 0.0;
  bool hyperbolic = false;
};

// Runs the compactification experiment along the ray through p: the
// normalized lengths are expected to converge to
// foliation_half_length(p, w).  Requires p != 0 and strictly increasing
// positive t_values.
std::vector<RayLimitSample> ray_limit_experiment(
    const CollarParams& p, const TorusWord& w,
    const std::vector<double>& t_values, const Tolerance& tol = {});

// Builds the holonomy of t and reads the triple back from the traces of
// the two generators and their product; the identity map on the surface.
TriangleLengths theta_roundtrip(const TriangleLengths& t,
                                const Tolerance& tol = {});

}  // namespace collar
