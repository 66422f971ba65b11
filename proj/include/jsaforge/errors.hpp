#pragma once

#include <stdexcept>
#include <string>

namespace jsaforge {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or configuration detected before any computation.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// Numerical computation failed (non-finite data, SVD breakdown, ...).
class NumericalFailure : public Error {
public:
  using Error::Error;
};

class DegenerateGroupVelocities : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class InvalidSpectralFn : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class UndefinedAngle : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class MappingDomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DisplacementError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DegenerateOptimum : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class ModelRangeError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

/// Fock-space truncation lost too much weight to trust the result.
class TruncationError : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

class OptimizationFailure : public NumericalFailure {
public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace jsaforge
