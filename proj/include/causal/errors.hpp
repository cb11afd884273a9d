#pragma once

#include <stdexcept>
#include <string>

namespace causal {

/// Base class for all library errors.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad configuration: unknown keys, missing columns named in config, invalid
/// parameter combinations. CLI exit code 2.
class ConfigError : public Error {
  public:
    using Error::Error;
};

/// Malformed or unusable input data. CLI exit code 3.
class DataError : public Error {
  public:
    using Error::Error;
};

/// Ragged rows, unreadable files, bad quoting.
class StructuralError : public DataError {
  public:
    using DataError::DataError;
};

/// Duplicate headers, unknown columns, kind mismatches.
class SchemaError : public DataError {
  public:
    using DataError::DataError;
};

/// A column whose every value is missing cannot be imputed.
class UnimputableColumnError : public DataError {
  public:
    using DataError::DataError;
};

/// A category not covered by the encoding plan was seen at encode time.
class EncodingError : public DataError {
  public:
    using DataError::DataError;
};

/// Numeric trouble: degenerate inputs, non-finite values, failed
/// preconditions of numeric operations. CLI exit code 4.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Zero-variance column where variation is required.
class DegenerateColumnError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Zero-variance regressor in a simple regression.
class DegenerateRegressorError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Constant sample handed to a statistical test.
class DegenerateSampleError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Rank-deficient or otherwise unusable regression design.
class DegenerateDesignError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// An operation was called outside its contract.
class PreconditionError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// The requested effect is not identified by the given adjustment set.
class IdentificationError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Graph lookup failures (unknown node names).
class LookupError : public NumericError {
  public:
    using NumericError::NumericError;
};

/// Exhaustive enumeration refused because the graph is too large.
class BudgetError : public ConfigError {
  public:
    using ConfigError::ConfigError;
};

}  // namespace causal
