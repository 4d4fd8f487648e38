#pragma once

#include <stdexcept>
#include <string>

namespace paircat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested superposition has vanishing norm (e.g. xi = 0 with cos(phi) = -1).
class DegenerateStateError : public Error {
 public:
  using Error::Error;
};

// The requested cutoff leaves more probability in the discarded tail than allowed.
class TruncationError : public Error {
 public:
  using Error::Error;
};

// Step-halving check of the reference integrator did not settle below tolerance.
class StepCheckError : public Error {
 public:
  using Error::Error;
};

// Eigensolver failed to push the off-diagonal norm below threshold.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// A spectrum entry was below the allowed negative tolerance.
class NegativeEigenvalueError : public Error {
 public:
  using Error::Error;
};

// A witness was requested on an index whose coefficient is exactly zero.
class ZeroCoefficientError : public Error {
 public:
  using Error::Error;
};

// A conditional state was requested for an outcome that occurs with probability zero.
class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

}  // namespace paircat
