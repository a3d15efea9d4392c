#pragma once

#include <stdexcept>
#include <string>

namespace orliczcorr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain (negative t, non-finite point, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A caller violated an operation's contract (i == j, non-monotone test function, ...).
class ContractError : public Error {
 public:
  using Error::Error;
};

/// A bracketing search for an inverse did not terminate within its expansion cap.
class SearchError : public Error {
 public:
  using Error::Error;
};

/// Deterministic quadrature refused: dimension cutoff or evaluation budget exceeded.
/// Callers are expected to fall back to Monte Carlo.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// Sampler failure: retry cap exceeded, bad start point, or too few samples.
class SamplingError : public Error {
 public:
  using Error::Error;
};

/// Malformed body description or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace orliczcorr
