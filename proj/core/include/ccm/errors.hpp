#pragma once

#include <stdexcept>
#include <string>

namespace ccm {

// Base class for every error the library raises on bad input or infeasible
// requests. Internal invariant violations use std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidVertex : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class ParameterError : public Error {
 public:
  using Error::Error;
};

class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// Exhaustive enumeration would exceed the configured atom budget.
class EnumerationTooLarge : public Error {
 public:
  using Error::Error;
};

class FitInfeasible : public Error {
 public:
  using Error::Error;
};

class EstimationFailed : public Error {
 public:
  using Error::Error;
};

}  // namespace ccm
