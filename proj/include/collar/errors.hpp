#pragma once

#include <stdexcept>
#include <string>

namespace collar {

// Base class for every exception this library throws.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input outside the mathematical domain of an operation (CLI exit code 2).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An iterative kernel failed to converge (CLI exit code 3).
class SolverError : public Error {
 public:
  using Error::Error;
};

#define COLLAR_DEFINE_ERROR(NAME, BASE, PREFIX)                    \
  class NAME : public BASE {                                       \
   public:                                                         \
    explicit NAME(const std::string& detail = "")                  \
        : BASE(detail.empty() ? PREFIX : PREFIX ": " + detail) {}  \
  }

// --- domain errors ---------------------------------------------------------
COLLAR_DEFINE_ERROR(NonPositiveLength, DomainError,
                    "length must be strictly positive");
COLLAR_DEFINE_ERROR(NegativeLength, DomainError, "length must be nonnegative");
COLLAR_DEFINE_ERROR(NegativeMeasure, DomainError,
                    "transverse measures must be nonnegative");
COLLAR_DEFINE_ERROR(NotOnH, DomainError,
                    "triple does not satisfy the collar equation");
COLLAR_DEFINE_ERROR(NotInDelta, DomainError,
                    "triple does not satisfy the triangle equality");
COLLAR_DEFINE_ERROR(OutOfDomain, DomainError,
                    "point outside the annulus domain |y| <= 1");
COLLAR_DEFINE_ERROR(DomainTooLarge, DomainError,
                    "value not representable in double precision");
COLLAR_DEFINE_ERROR(EmptySection, DomainError,
                    "plane does not meet the collar surface");
COLLAR_DEFINE_ERROR(StepTooLarge, DomainError,
                    "finite-difference stencil leaves the domain");
COLLAR_DEFINE_ERROR(NotHyperbolic, DomainError,
                    "element is not hyperbolic (|trace| <= 2)");
COLLAR_DEFINE_ERROR(UnsupportedWord, DomainError,
                    "word outside the supported desk-scale classes");
COLLAR_DEFINE_ERROR(WordParseError, DomainError,
                    "word must use letters a, A, b, B");
COLLAR_DEFINE_ERROR(Inconsistent, DomainError,
                    "inputs are mutually inconsistent");
COLLAR_DEFINE_ERROR(DegenerateA, DomainError,
                    "holonomy generator degenerates at a = 0");

// --- solver errors ----------------------------------------------------------
COLLAR_DEFINE_ERROR(NoConvergence, SolverError,
                    "iteration did not converge within max_iter");
COLLAR_DEFINE_ERROR(NegativeComponent, SolverError,
                    "iterate left the positive cone");
COLLAR_DEFINE_ERROR(GridTooCoarse, SolverError,
                    "path refinement failed to stabilize");

#undef COLLAR_DEFINE_ERROR

}  // namespace collar
