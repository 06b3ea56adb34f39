#pragma once

#include <stdexcept>
#include <string>

namespace qnls {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters: grid sizes, tolerances, enumerations, config fields.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values in inputs or outputs of a numerical kernel.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// The grid cannot represent the requested object (window below dx,
/// profile leaving the box, unresolved phase).
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// A functional is undefined for the given input (e.g. the zero field).
class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Too little data to reach the documented accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// A least-squares fit was refused (non-monotone data, singular system).
class FitRejected : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// A data file is readable but does not have the expected layout.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnls
