#include <cmath>
#include <limits>

#include "collar/scalar.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace collar;
using testutil::almost_equal;

TEST_CASE("log_cosh matches log(cosh) at moderate arguments") {
  CHECK(log_cosh(0.0) == 0.0);
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0, 29.0}) {
    // The naive reference loses relative accuracy for small x (log of a
    // value near 1), hence the absolute term.
    CHECK(almost_equal(log_cosh(x), std::log(std::cosh(x)), 2e-16, 4e-16));
    CHECK(log_cosh(-x) == log_cosh(x));
  }
}

TEST_CASE("log_cosh large-argument branch continues the asymptote") {
  // cosh x ~ e^x / 2, so log cosh x ~ x - log 2 with an e^{-2x} correction.
  CHECK(almost_equal(log_cosh(50.0), 50.0 - kLn2, 0.0, 1e-15));
  CHECK(almost_equal(log_cosh(1000.0), 1000.0 - kLn2, 0.0, 1e-15));
  // Continuity across the branch switch at 30.
  CHECK(almost_equal(log_cosh(30.0 - 1e-9), log_cosh(30.0 + 1e-9), 1e-8, 0.0));
}

TEST_CASE("log_sinh matches log(sinh) and its asymptote") {
  for (double x : {0.05, 1.0, 5.0, 25.0}) {
    CHECK(almost_equal(log_sinh(x), std::log(std::sinh(x)), 0.0, 4e-16));
  }
  CHECK(almost_equal(log_sinh(700.0), 700.0 - kLn2, 0.0, 1e-15));
}

TEST_CASE("acosh_1p inverts cosh - 1 accurately near zero") {
  CHECK(acosh_1p(0.0) == 0.0);
  for (double x : {1e-8, 1e-3, 0.5, 2.0, 20.0}) {
    const double u = 2.0 * std::pow(std::sinh(0.5 * x), 2);  // cosh(x) - 1
    CHECK(almost_equal(acosh_1p(u), x, 0.0, 1e-13));
  }
  // Tiny arguments follow acosh(1+u) ~ sqrt(2u).
  CHECK(almost_equal(acosh_1p(1e-300), std::sqrt(2e-300), 0.0, 1e-12));
}

TEST_CASE("acosh_from_log inverts log(cosh) at every scale") {
  for (double x : {0.3, 1.0, 4.0, 28.0}) {
    CHECK(almost_equal(acosh_from_log(std::log(std::cosh(x))), x, 0.0, 2e-15));
  }
  // Huge log magnitudes: acosh(e^L) = L + log 2 - e^{-2L}/4 - ...
  CHECK(almost_equal(acosh_from_log(500.0), 500.0 + kLn2, 0.0, 1e-15));
}

TEST_CASE("log_add_exp and log_sub_exp combine magnitudes stably") {
  CHECK(almost_equal(log_add_exp(std::log(3.0), std::log(1.0)),
                     std::log(4.0)));
  CHECK(almost_equal(log_add_exp(-800.0, -800.0), -800.0 + kLn2));
  double lost = 0.0;
  CHECK(almost_equal(log_sub_exp(std::log(3.0), std::log(1.0), &lost),
                     std::log(2.0)));
  CHECK(lost < 2.0);
  // Near-total cancellation is reported through the out-parameter.
  log_sub_exp(1e-13, 0.0, &lost);
  CHECK(lost > 25.0);
}

TEST_CASE("SignedLog round-trips values and multiplies with signs") {
  const SignedLog m3 = SignedLog::of(-3.0);
  const SignedLog p4 = SignedLog::of(4.0);
  CHECK(almost_equal(m3.value(), -3.0));
  CHECK(almost_equal((m3 * p4).value(), -12.0));
  CHECK(almost_equal((m3 / p4).value(), -0.75));
  CHECK(SignedLog::of(0.0).sgn == 0);
  CHECK(SignedLog::of(0.0).value() == 0.0);
}

TEST_CASE("sl_add handles mixed signs and exact cancellation") {
  double lost = 0.0;
  const SignedLog s1 = sl_add(SignedLog::of(5.0), SignedLog::of(-2.0), &lost);
  CHECK(almost_equal(s1.value(), 3.0));
  const SignedLog s2 = sl_add(SignedLog::of(2.0), SignedLog::of(-2.0), &lost);
  CHECK(s2.sgn == 0);
  CHECK(s2.value() == 0.0);
  const SignedLog s3 = sl_add(SignedLog::of(-1.0), SignedLog::of(-1.0), &lost);
  CHECK(almost_equal(s3.value(), -2.0));
}
