#pragma once

#include <stdexcept>
#include <string>

namespace bp2 {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the type it populates
/// (belief outside [0,1], negative weight, malformed policy row, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The cost function violates c(0)=0, c'(0)=0, c'(1)>1 or strict convexity.
class AssumptionViolation : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Effort at 0 or 1 where an operation divides by lambda(1-lambda).
class DegeneratePrior : public Error {
 public:
  using Error::Error;
};

/// Posterior mean differs from the prior.
class NotPlausible : public Error {
 public:
  using Error::Error;
};

/// Effort above the implementable bound lambda_bar.
class InfeasibleEffort : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// No nonnegative distribution meets the constraints.
class Infeasible : public Error {
 public:
  using Error::Error;
};

/// A distribution handed to the multiplier search violates plausibility or IC.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

/// step() was called on a process with no live individuals.
class ExtinctProcess : public Error {
 public:
  using Error::Error;
};

/// Mean offspring m <= 1; the normalized population has no positive limit.
class Subcritical : public Error {
 public:
  using Error::Error;
};

/// eta_star with alpha_xx = 1, alpha_yx = 0, or an ODE started at z <= 0.
class DegenerateDenominator : public Error {
 public:
  using Error::Error;
};

/// A numerical routine finished but its output fails the post-condition it
/// is required to meet.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// Malformed or out-of-schema configuration input.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

}  // namespace bp2
