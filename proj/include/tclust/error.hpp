#pragma once

#include <stdexcept>
#include <string>

namespace tclust {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPointError : public Error {
 public:
  using Error::Error;
};

class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Raised when an explicit distance matrix is not a metric.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input. The message carries a JSON-path style location.
class ParseError : public Error {
 public:
  using Error::Error;
};

class DegenerateSpreadError : public Error {
 public:
  using Error::Error;
};

class EmptyClusteringError : public Error {
 public:
  using Error::Error;
};

// A trajectory does not match the sampling it is evaluated against.
class StructuralError : public Error {
 public:
  using Error::Error;
};

class InvalidCentersError : public Error {
 public:
  using Error::Error;
};

// A flow violated conservation or bounds where the caller promised feasibility.
class InvariantError : public Error {
 public:
  using Error::Error;
};

class BudgetExceededError : public Error {
 public:
  using Error::Error;
};

}  // namespace tclust
