#pragma once

#include <stdexcept>
#include <string>

namespace mspace {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The phase equation has no solution for the requested node index.
class NoNodeError : public Error {
 public:
  using Error::Error;
};

/// A sampling grid was paired with an inner function it was not built from.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

/// An iterative or adaptive procedure could not certify its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Invalid study configuration (CLI input).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace mspace
