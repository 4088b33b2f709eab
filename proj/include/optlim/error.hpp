#pragma once

#include <stdexcept>
#include <string>

namespace optlim {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (PD text, JSON diagrams, names).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A point where some dilogarithm/log argument hits 0, 1 or infinity, or a
/// crossing violates a nondegeneracy condition.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Newton iteration failed (divergence, singular Jacobian, iteration cap).
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Overdetermined data that does not close up (e.g. ratios propagated around
/// a cycle disagree), meaning the input is not an actual solution.
class InconsistentError : public Error {
 public:
  using Error::Error;
};

}  // namespace optlim
