#pragma once

#include <stdexcept>
#include <string>

namespace xtalk {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed transition pattern (length mismatch, bad symbols, bad bits).
class InvalidPatternError : public Error {
 public:
  using Error::Error;
};

/// Bus description violates an invariant (non-positive r/c/length, ...).
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

/// The observed wire does not transition.
class NoTransitionError : public Error {
 public:
  using Error::Error;
};

/// A waveform never crosses the requested threshold inside the bracket.
class NoCrossingError : public Error {
 public:
  using Error::Error;
};

/// A simulated trace did not settle to its DC target.
class NotSettledError : public Error {
 public:
  using Error::Error;
};

/// Traces with different time grids cannot be combined.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// A search or generation run would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Unsupported class/model combination or similar usage error.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace xtalk
