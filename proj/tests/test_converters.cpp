#include <cmath>

#include "collar/converters.hpp"
#include "collar/errors.hpp"
#include "collar/geometry.hpp"
#include "doctest.h"
#include "expected_values.hpp"
#include "test_support.hpp"

using namespace collar;
using testutil::almost_equal;
using testutil::params_close;
using testutil::triples_close;

TEST_CASE("fn_to_triangle reproduces the frozen zero-twist image") {
  const TriangleLengths t = fn_to_triangle({2.0, 0.0});
  CHECK(almost_equal(t.a, 1.0));
  CHECK(almost_equal(t.b, expected::fn10_b, 0.0, 1e-14));
  CHECK(almost_equal(t.c, expected::fn10_c, 0.0, 1e-14));
}

TEST_CASE("fn_to_triangle at zero twist gives the collar depth of the core") {
  // cosh b = coth l means sinh b = 1/sinh l, the classical depth formula.
  for (double l : {0.5, 1.0, 2.0, 4.0}) {
    const TriangleLengths t = fn_to_triangle({2.0 * l, 0.0});
    CHECK(almost_equal(t.b, std::asinh(1.0 / std::sinh(l)), 0.0, 1e-14));
  }
}

TEST_CASE("fn_to_triangle lands on the collar surface identically") {
  for (double l : {0.25, 1.0, 3.0, 5.0}) {
    for (double tau : {-5.0, -1.2, 0.0, 0.7, 2.0, 5.0}) {
      CAPTURE(l);
      CAPTURE(tau);
      const TriangleLengths t = fn_to_triangle({2.0 * l, 2.0 * tau});
      CHECK(std::abs(collar_residual_scaled(t)) < 1e-13);
      CHECK(in_H(t, {1e-10, 1e-10}));
    }
  }
}

TEST_CASE("fn_to_triangle keeps the surface identity at huge twists") {
  // Components beyond 500 force every cosh through the log-space branch.
  const TriangleLengths t = fn_to_triangle({2.0, 1000.0});
  CHECK(t.b > 499.0);
  CHECK(t.c > 498.0);
  CHECK(std::abs(collar_residual_scaled(t)) < 1e-11);
}

TEST_CASE("fn_to_triangle rejects bad lengths") {
  CHECK_THROWS_AS(fn_to_triangle({0.0, 1.0}), NonPositiveLength);
  CHECK_THROWS_AS(fn_to_triangle({-2.0, 1.0}), NonPositiveLength);
  CHECK_THROWS_AS(fn_to_triangle({std::nan(""), 1.0}), OutOfDomain);
}

TEST_CASE("fn_to_cp reproduces the frozen parameters and spec gloss") {
  const CollarParams p = fn_to_cp({2.0, 0.0});
  CHECK(almost_equal(p.x, expected::fn10_x, 0.0, 1e-13));
  CHECK(almost_equal(p.y, expected::fn10_y, 0.0, 1e-13));
  // Coarse values quoted alongside the conversion formulas.
  CHECK(almost_equal(p.x, -0.20774, 1e-4, 0.0));
  CHECK(almost_equal(p.y, -1.11994, 1e-4, 0.0));
}

TEST_CASE("fn_to_cp with twist equal to length has the predicted height") {
  for (double l : {0.7, 1.3, 2.0}) {
    const CollarParams p = fn_to_cp({2.0 * l, 2.0 * l});
    const double want = 2.0 * std::acosh(std::cosh(l) / std::tanh(l)) -
                        2.0 * std::acosh(1.0 / std::tanh(l));
    CHECK(almost_equal(p.y, want, 1e-13, 1e-13));
  }
}

TEST_CASE("fn_to_cp is injective on a sample grid") {
  std::vector<CollarParams> images;
  for (double l : {0.5, 1.0, 1.5, 2.0, 3.0}) {
    for (double tau : {-2.0, -0.5, 0.0, 1.0, 2.5}) {
      images.push_back(fn_to_cp({2.0 * l, 2.0 * tau}));
    }
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = i + 1; j < images.size(); ++j) {
      const double dx = images[i].x - images[j].x;
      const double dy = images[i].y - images[j].y;
      CHECK(std::hypot(dx, dy) > 1e-6);
    }
  }
}

TEST_CASE("dt_to_triangle reproduces the closed-form images") {
  CHECK(triples_close(dt_to_triangle({6.0, 2.0}), {3.0, 1.0, 2.0}, 0.0, 0.0));
  CHECK(triples_close(dt_to_triangle({0.0, 0.0}), {0.0, 0.0, 0.0}, 0.0, 0.0));
  CHECK(triples_close(dt_to_triangle({2.0, -2.0}), {1.0, 1.0, 2.0}, 0.0, 0.0));
  CHECK_THROWS_AS(dt_to_triangle({-1.0, 0.0}), NegativeLength);
}

TEST_CASE("dt_to_triangle lands on the cone exactly") {
  for (double te : {0.0, 0.5, 2.0, 7.0}) {
    for (double tt : {-3.0, -0.5, 0.0, 1.0, 9.0}) {
      const TriangleLengths t = dt_to_triangle({te, tt});
      CAPTURE(te);
      CAPTURE(tt);
      CHECK(delta_residual(t) == 0.0);
      CHECK(in_Delta(t));
    }
  }
}

TEST_CASE("dt_to_cp reproduces the closed-form parameters") {
  CHECK(params_close(dt_to_cp({6.0, 2.0}), {6.0, -2.0}, 0.0, 0.0));
  CHECK(params_close(dt_to_cp({0.0, 0.0}), {0.0, 0.0}, 0.0, 0.0));
  CHECK(params_close(dt_to_cp({2.0, -2.0}), {-2.0, -2.0}, 0.0, 0.0));
}

TEST_CASE("cp_to_fn recovers coarse coordinates from the frozen image") {
  const FenchelNielsen fn = cp_to_fn({expected::fn10_x, expected::fn10_y});
  CHECK(almost_equal(fn.two_ell, 2.0, 1e-3, 0.0));
  CHECK(almost_equal(fn.two_tau, 0.0, 1e-3, 0.0));
}

TEST_CASE("cp_to_fn round-trips hyperbolic coordinates") {
  for (double l : {0.25, 0.8, 1.0, 2.5, 5.0}) {
    for (double tau : {-5.0, -2.0, -0.3, 0.001, 0.9, 3.0, 5.0}) {
      CAPTURE(l);
      CAPTURE(tau);
      const CollarParams p = fn_to_cp({2.0 * l, 2.0 * tau});
      const FenchelNielsen back = cp_to_fn(p);
      CHECK(almost_equal(back.two_ell, 2.0 * l, 1e-9, 1e-9));
      CHECK(almost_equal(back.two_tau, 2.0 * tau, 1e-8, 1e-9));
      // The recovered pair maps back to the same parameters.
      const CollarParams p2 = fn_to_cp(back);
      CHECK(params_close(p2, p, 1e-9, 1e-9));
    }
  }
}

TEST_CASE("cp_to_fn keeps the twist accurate when the curve is short") {
  // A short curve amplifies perimeter error in the twist readback by
  // ~1/tanh(l); the solver's final polishing pass keeps the recovered twist
  // at the conditioning floor of the chart map itself.  The second value of
  // two_ell below previously round-tripped 800x worse than this bound.
  for (double two_ell : {1e-3, 0.0021417096917171422, 0.01, 0.05}) {
    for (double two_tau : {-9.7, -3.8263127617071486, 0.5, 7.2}) {
      CAPTURE(two_ell);
      CAPTURE(two_tau);
      const FenchelNielsen fn{two_ell, two_tau};
      const FenchelNielsen back = cp_to_fn(fn_to_cp(fn));
      CHECK(almost_equal(back.two_ell, two_ell, 1e-12, 1e-10));
      CHECK(almost_equal(back.two_tau, two_tau, 1e-10, 1e-10));
    }
  }
}

TEST_CASE("cp_to_fn keeps full precision at and near zero twist") {
  // The twist is recovered from two equations whose square-root folds sit
  // at tau = 0 and tau = l; using the better-conditioned one keeps the
  // readback accurate even exactly on a fold.
  for (double l : {0.5, 1.0, 3.0}) {
    for (double tau : {0.0, 1e-9, -1e-7, 1e-4}) {
      CAPTURE(l);
      CAPTURE(tau);
      const CollarParams p = fn_to_cp({2.0 * l, 2.0 * tau});
      const FenchelNielsen back = cp_to_fn(p);
      CHECK(almost_equal(back.two_ell, 2.0 * l, 1e-9, 1e-9));
      CHECK(almost_equal(back.two_tau, 2.0 * tau, 1e-10, 1e-9));
      CHECK(params_close(fn_to_cp(back), p, 1e-9, 1e-9));
    }
  }
}

TEST_CASE("cp_to_fn keeps full precision near the twist-equals-length fold") {
  for (double l : {0.5, 1.0, 3.0}) {
    for (double off : {0.0, 1e-9, -1e-6}) {
      const double tau = l + off;
      CAPTURE(l);
      CAPTURE(tau);
      const CollarParams p = fn_to_cp({2.0 * l, 2.0 * tau});
      const FenchelNielsen back = cp_to_fn(p);
      CHECK(almost_equal(back.two_tau, 2.0 * tau, 1e-10, 1e-9));
    }
  }
}

TEST_CASE("cp_to_dt reproduces the closed-form inverses") {
  const DehnThurston d1 = cp_to_dt({6.0, -2.0});
  CHECK(d1.two_ell == 6.0);
  CHECK(d1.two_tau == 2.0);
  const DehnThurston d2 = cp_to_dt({0.0, 0.0});
  CHECK(d2.two_ell == 0.0);
  CHECK(d2.two_tau == 0.0);
  const DehnThurston d3 = cp_to_dt({-2.0, -2.0});
  CHECK(d3.two_ell == 2.0);
  CHECK(d3.two_tau == -2.0);
}

TEST_CASE("cp_to_dt round-trips dyadic coordinates exactly") {
  for (double te = 0.0; te <= 8.0; te += 0.25) {
    for (double tt = -8.0; tt <= 8.0; tt += 0.75) {
      const DehnThurston dt{te, tt};
      const DehnThurston back = cp_to_dt(dt_to_cp(dt));
      CAPTURE(te);
      CAPTURE(tt);
      CHECK(back.two_ell == te);
      // On the axis te = 0 the twist sign is unrecoverable (b = |tau| = c);
      // the tie rule then reports the magnitude with a plus sign.
      if (te == 0.0) {
        CHECK(back.two_tau == std::abs(tt));
      } else {
        CHECK(back.two_tau == tt);
      }
    }
  }
}

TEST_CASE("fn_dt_degeneration_gap matches the frozen value and decays") {
  CHECK(almost_equal(fn_dt_degeneration_gap({2.0, 1.0}),
                     expected::degen_gap_1_05, 0.0, 1e-12));
  const double g1 = fn_dt_degeneration_gap({2.0, 0.6});
  const double g100 = fn_dt_degeneration_gap({200.0, 60.0});
  CHECK(g1 > 0.0);
  CHECK(g100 < g1);
  CHECK(g100 < 0.01);
}

TEST_CASE("degeneration gap height vanishes at half-length twist") {
  for (double l : {1.0, 2.0, 3.5}) {
    const CollarParams hyp = fn_to_cp({2.0 * l, l});
    const CollarParams fol = dt_to_cp({2.0 * l, l});
    CHECK(hyp.y == 0.0);
    CHECK(fol.y == 0.0);
  }
}
