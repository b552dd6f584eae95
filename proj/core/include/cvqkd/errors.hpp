#pragma once

#include <stdexcept>
#include <string>

namespace cvqkd {

// Base class for all errors raised by the library. Everything derives from
// std::runtime_error so callers can catch coarsely or finely as needed.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An operator or spectrum violates positivity / trace requirements beyond the
// accepted numerical floor.
struct NonPhysicalState : Error { using Error::Error; };

// Relative entropy requested with first argument supported outside the
// support of the second.
struct SupportViolation : Error { using Error::Error; };

// Tensor-factor bookkeeping mismatch (bad index set, wrong side, ...).
struct DimensionMismatch : Error { using Error::Error; };

// Adaptive quadrature could not reach the requested tolerance in budget.
struct QuadratureFailure : Error { using Error::Error; };

// Conditioning on an event of (numerically) zero probability.
struct DegenerateConditioning : Error { using Error::Error; };

// Operation requires a phase-shift-keyed constellation.
struct NonPSKConstellation : Error { using Error::Error; };

// Cutoff too small for the channel: excluded weight W outside [0,1).
struct WeightOutOfRange : Error { using Error::Error; };

// Step-2 dual certificate could not be produced; callers must fail closed.
struct CertificateFailure : Error { using Error::Error; };

// Linearized subproblem has no solution (or the solver diverged).
struct Infeasible : Error { using Error::Error; };

// Frank-Wolfe gap plateaued beyond the patience budget.
struct Stalled : Error { using Error::Error; };

// Bad run configuration / CLI usage.
struct ConfigError : Error { using Error::Error; };

}  // namespace cvqkd
