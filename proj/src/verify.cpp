#include "collar/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "collar/converters.hpp"
#include "collar/errors.hpp"
#include "collar/foliations.hpp"
#include "collar/geometry.hpp"
#include "collar/holonomy.hpp"
#include "collar/metric.hpp"

namespace collar {

std::uint64_t FuzzRng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double FuzzRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double FuzzRng::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kEps = std::numeric_limits<double>::epsilon();

// A fuzzed collar-surface point: the fiber over a uniform draw from the
// disk of the given radius in the parameter plane.  Each property picks the
// largest radius at which its own arithmetic stays conditioned (commutator
// cancellation grows like e^{2(a+b)}, finite differences lose the
// exponentially degenerating determinant, and so on).
TriangleLengths fuzz_surface_point(FuzzRng& rng, const Tolerance& tol,
                                   double radius) {
  const double angle = rng.uniform(0.0, 6.283185307179586);
  const double r = radius * rng.uniform();
  return invert_pi_H({r * std::cos(angle), r * std::sin(angle)}, tol);
}

PropertyResult bounded(const std::string& name, int cases, double worst,
                       double tolerance) {
  return {name, cases, worst, tolerance, worst <= tolerance};
}

// --- metric ----------------------------------------------------------------

SuiteReport metric_suite(std::uint64_t seed, int n, const Tolerance& tol) {
  SuiteReport rep{"metric", seed, n, {}, false};
  FuzzRng rng(seed);

  {  // Gaussian curvature of the collar metric is -1 across the strip.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CollarMetric m =
          make_metric(fuzz_surface_point(rng, tol, 8.0), tol);
      for (int k = 0; k < 10; ++k) {
        const double y = -0.9 + 1.8 * k / 9.0;
        worst = std::max(worst,
                         std::abs(gaussian_curvature(m, y, 1e-3) + 1.0));
      }
    }
    rep.properties.push_back(
        bounded("curvature_is_minus_one", n, worst, 1e-3));
  }

  {  // Operator distance to the constant comparison form stays <= 2.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CollarMetric m =
          make_metric(fuzz_surface_point(rng, tol, 12.0), tol);
      worst = std::max(worst, comparison_defect(m, rng.uniform(-1.0, 1.0)));
    }
    rep.properties.push_back(bounded("comparison_defect_at_most_2", n, worst,
                                     2.0));
  }

  {  // The tensor is positive definite everywhere it is defined.  The raw
     // determinant cancels to eps-noise once a + b passes ~18, so the draw
     // stays inside the radius where E G - F^2 is resolvable.
    double worst = kInf;  // smallest determinant seen
    for (int i = 0; i < n; ++i) {
      const CollarMetric m =
          make_metric(fuzz_surface_point(rng, tol, 10.0), tol);
      const MetricTensorValue g = tensor_at(m, 0.0, rng.uniform(-1.0, 1.0));
      worst = std::min(worst, g.E * g.G - g.F * g.F);
    }
    rep.properties.push_back(
        {"tensor_determinant_positive", n, worst, 0.0, worst > 0.0});
  }

  {  // One period of the boundary hypercycle measures 2a coth a.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const CollarMetric m =
          make_metric(fuzz_surface_point(rng, tol, 20.0), tol);
      const double len = curve_length(m, {{0.0, 1.0}, {2.0, 1.0}});
      const double target = 2.0 * m.h;
      worst = std::max(worst, std::abs(len - target) / (1.0 + target));
    }
    rep.properties.push_back(bounded("boundary_period_2a_coth_a", n, worst,
                                     1e-9));
  }

  {  // Minimal descent from boundary to core reproduces the depth kappa.
    const int cases = std::min(n, 50);  // golden-section refinement is the
                                        // expensive kernel in this suite
    double worst = 0.0;
    for (int i = 0; i < cases; ++i) {
      const CollarMetric m =
          make_metric(fuzz_surface_point(rng, tol, 8.0), tol);
      worst = std::max(worst, std::abs(depth_check(m, 256) - m.kappa));
    }
    rep.properties.push_back(bounded("depth_matches_kappa", cases, worst,
                                     1e-3));
  }

  rep.pass = std::all_of(rep.properties.begin(), rep.properties.end(),
                         [](const PropertyResult& p) { return p.pass; });
  return rep;
}

// --- traces ----------------------------------------------------------------

SuiteReport traces_suite(std::uint64_t seed, int n, const Tolerance& tol) {
  SuiteReport rep{"traces", seed, n, {}, false};
  FuzzRng rng(seed);

  {  // tr A = 2cosh a, tr B = 2cosh b, tr AB = 2cosh c on the surface.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const TriangleLengths t = fuzz_surface_point(rng, tol, 20.0);
      const HolonomyPair h = holonomy_from_lengths(t, tol);
      const double miss = std::abs(h.A.trace() - 2.0 * std::cosh(t.a)) +
                          std::abs(h.B.trace() - 2.0 * std::cosh(t.b)) +
                          std::abs(h.product().trace() -
                                   2.0 * std::cosh(t.c));
      worst = std::max(worst, miss / (1.0 + 2.0 * std::cosh(t.c)));
    }
    rep.properties.push_back(bounded("trace_targets_on_surface", n, worst,
                                     1e-10));
  }

  {  // The commutator trace is exactly -2 on the surface.  Its plain
     // evaluation cancels terms of order e^{2(a+b)} down to order one, so
     // the flat threshold is honest only at desk scale.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const TriangleLengths t = fuzz_surface_point(rng, tol, 5.0);
      const HolonomyPair h = holonomy_from_lengths(t, tol);
      worst = std::max(
          worst, std::abs(word_trace(h, TorusWord{"abAB"}) + 2.0));
    }
    rep.properties.push_back(bounded("commutator_trace_minus_2", n, worst,
                                     1e-9));
  }

  {  // Off the surface, tr[A,B] + 2 = 4 * collar_residual identically.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const TriangleLengths t = {rng.uniform(0.05, 5.0),
                                 rng.uniform(0.05, 5.0),
                                 rng.uniform(0.05, 5.0)};
      const HolonomyPair h = holonomy_from_any_lengths(t);
      const double lhs = word_trace(h, TorusWord{"abAB"}) + 2.0;
      const double rhs = 4.0 * collar_residual(t);
      worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
    }
    rep.properties.push_back(bounded("commutator_equals_4_residual", n,
                                     worst, 1e-8));
  }

  rep.pass = std::all_of(rep.properties.begin(), rep.properties.end(),
                         [](const PropertyResult& p) { return p.pass; });
  return rep;
}

// --- roundtrip --------------------------------------------------------------

SuiteReport roundtrip_suite(std::uint64_t seed, int n, const Tolerance& tol) {
  SuiteReport rep{"roundtrip", seed, n, {}, false};
  FuzzRng rng(seed);

  {  // project_pi inverts the surface fiber solve, radius up to 1e4.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double angle = rng.uniform(0.0, 6.283185307179586);
      const double radius = 1e4 * rng.uniform();
      const CollarParams p{radius * std::cos(angle),
                           radius * std::sin(angle)};
      const CollarParams q = project_pi(invert_pi_H(p, tol));
      worst = std::max({worst, std::abs(q.x - p.x), std::abs(q.y - p.y)});
    }
    rep.properties.push_back(bounded("pi_of_surface_fiber", n, worst, 1e-9));
  }

  {  // project_pi inverts the closed-form cone fiber to the last ulps:
     // the sector formulas round (x +- y)/4 once, so bit-exactness is not
     // attainable, but nothing beyond those roundings may accumulate.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const double angle = rng.uniform(0.0, 6.283185307179586);
      const double radius = 1e4 * rng.uniform();
      const CollarParams p{radius * std::cos(angle),
                           radius * std::sin(angle)};
      const CollarParams q = project_pi(invert_pi_delta(p));
      const double scale = 1.0 + std::max(std::abs(p.x), std::abs(p.y));
      worst = std::max({worst, std::abs(q.x - p.x) / scale,
                        std::abs(q.y - p.y) / scale});
    }
    rep.properties.push_back(
        bounded("pi_of_cone_fiber_ulp_exact", n, worst, 4.0 * kEps));
  }

  {  // Triple -> traces -> triple is the identity on the surface.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const TriangleLengths t = fuzz_surface_point(rng, tol, 20.0);
      const TriangleLengths r = theta_roundtrip(t, tol);
      worst = std::max({worst, std::abs(r.a - t.a), std::abs(r.b - t.b),
                        std::abs(r.c - t.c)});
    }
    rep.properties.push_back(bounded("theta_roundtrip_identity", n, worst,
                                     1e-9));
  }

  {  // Length/twist chart there and back.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const FenchelNielsen fn{rng.uniform(1e-3, 10.0),
                              rng.uniform(-10.0, 10.0)};
      const FenchelNielsen r = cp_to_fn(fn_to_cp(fn), tol);
      worst = std::max({worst, std::abs(r.two_ell - fn.two_ell),
                        std::abs(r.two_tau - fn.two_tau)});
    }
    rep.properties.push_back(bounded("fn_chart_roundtrip", n, worst, 1e-8));
  }

  {  // Measure/twist chart there and back.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const DehnThurston dt{rng.uniform(1e-3, 10.0),
                            rng.uniform(-10.0, 10.0)};
      const DehnThurston r = cp_to_dt(dt_to_cp(dt));
      worst = std::max({worst, std::abs(r.two_ell - dt.two_ell),
                        std::abs(r.two_tau - dt.two_tau)});
    }
    rep.properties.push_back(bounded("dt_chart_roundtrip", n, worst, 1e-12));
  }

  rep.pass = std::all_of(rep.properties.begin(), rep.properties.end(),
                         [](const PropertyResult& p) { return p.pass; });
  return rep;
}

// --- limits ----------------------------------------------------------------

SuiteReport limits_suite(std::uint64_t seed, int n, const Tolerance& tol) {
  SuiteReport rep{"limits", seed, n, {}, false};
  FuzzRng rng(seed);
  const std::vector<double> ts = {1.0, 10.0, 100.0, 1000.0};
  const int rays = std::min(n, 100);  // each ray is 4 deep fiber solves
                                      // per word

  std::vector<CollarParams> dirs;
  dirs.reserve(rays);
  for (int i = 0; i < rays; ++i) {
    const double angle = rng.uniform(0.0, 6.283185307179586);
    const double radius = rng.uniform(1.0, 10.0);
    dirs.push_back({radius * std::cos(angle), radius * std::sin(angle)});
  }

  {  // Normalized word lengths converge to the foliation values within 1%,
     // with non-increasing Cauchy gaps along t = 1, 10, 100, 1000.
    double worst_rel = 0.0;
    double worst_gap_growth = -kInf;
    bool all_hyperbolic = true;
    for (const CollarParams& p : dirs) {
      for (const char* word : {"a", "b", "ab"}) {
        const TorusWord w{word};
        const double predicted = foliation_half_length(p, w);
        const auto samples = ray_limit_experiment(p, w, ts, tol);
        bool word_ok = true;
        for (const RayLimitSample& s : samples) {
          word_ok = word_ok && s.hyperbolic;
        }
        if (!word_ok) {
          all_hyperbolic = false;
          continue;
        }
        const double final_gap =
            std::abs(samples.back().normalized_length - predicted);
        worst_rel = std::max(
            worst_rel, final_gap / std::max(predicted, 1e-12));
        for (std::size_t k = 2; k < samples.size(); ++k) {
          const double prev = std::abs(samples[k - 1].normalized_length -
                                       samples[k - 2].normalized_length);
          const double curr = std::abs(samples[k].normalized_length -
                                       samples[k - 1].normalized_length);
          worst_gap_growth = std::max(worst_gap_growth, curr - prev);
        }
      }
    }
    PropertyResult conv =
        bounded("ray_limit_within_1_percent", rays, worst_rel, 0.01);
    conv.pass = conv.pass && all_hyperbolic;
    rep.properties.push_back(conv);
    // Non-strict decrease up to the double-precision floor of the
    // normalized lengths themselves (gaps at 1e3 sit on eps-level noise).
    rep.properties.push_back(bounded("cauchy_gaps_nonincreasing", rays,
                                     worst_gap_growth, 1e-12));
  }

  {  // The commutator is refused as non-hyperbolic at every scale.
    int hyperbolic_hits = 0;
    for (const CollarParams& p : dirs) {
      const auto samples =
          ray_limit_experiment(p, TorusWord{"abAB"}, ts, tol);
      for (const RayLimitSample& s : samples) {
        hyperbolic_hits += s.hyperbolic ? 1 : 0;
      }
    }
    rep.properties.push_back(bounded("commutator_refused_on_rays", rays,
                                     static_cast<double>(hyperbolic_hits),
                                     0.0));
  }

  {  // The hyperbolic chart degenerates onto the foliation chart along
     // rays: at t = 100 the images sit within 1% of the scaled norm.
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const FenchelNielsen base{rng.uniform(1.0, 10.0),
                                rng.uniform(-10.0, 10.0)};
      const double t = 100.0;
      const double gap =
          fn_dt_degeneration_gap({t * base.two_ell, t * base.two_tau});
      const CollarParams img =
          dt_to_cp({base.two_ell, base.two_tau});
      const double scale = t * std::hypot(img.x, img.y);
      worst = std::max(worst, gap / scale);
    }
    rep.properties.push_back(bounded("chart_degeneration_along_rays", n,
                                     worst, 0.01));
  }

  rep.pass = std::all_of(rep.properties.begin(), rep.properties.end(),
                         [](const PropertyResult& p) { return p.pass; });
  return rep;
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t seed,
                      int n_cases, const Tolerance& tol) {
  if (n_cases <= 0) {
    throw OutOfDomain("run_suite: case count must be positive");
  }
  if (suite == "metric") {
    return metric_suite(seed, n_cases, tol);
  }
  if (suite == "traces") {
    return traces_suite(seed, n_cases, tol);
  }
  if (suite == "roundtrip") {
    return roundtrip_suite(seed, n_cases, tol);
  }
  if (suite == "limits") {
    return limits_suite(seed, n_cases, tol);
  }
  if (suite == "all") {
    SuiteReport rep{"all", seed, n_cases, {}, false};
    for (const char* name : {"metric", "traces", "roundtrip", "limits"}) {
      SuiteReport part = run_suite(name, seed, n_cases, tol);
      rep.properties.insert(rep.properties.end(), part.properties.begin(),
                            part.properties.end());
    }
    rep.pass = std::all_of(rep.properties.begin(), rep.properties.end(),
                           [](const PropertyResult& p) { return p.pass; });
    return rep;
  }
  throw OutOfDomain("run_suite: unknown suite '" + suite +
                    "' (expected metric|traces|roundtrip|limits|all)");
}

}  // namespace collar
