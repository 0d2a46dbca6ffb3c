#pragma once

#include <stdexcept>
#include <string>

namespace asysa {

/// Base type for every error the toolkit raises on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// Invalid or inconsistent run configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Dimensions do not match an operation's contract.
class ShapeError : public Error {
public:
  using Error::Error;
};

/// A value does not fit its declared bit width, or a bus carried a value
/// outside its representable range.
class WidthViolationError : public Error {
public:
  using Error::Error;
};

/// Malformed input text (trace files, result artifacts).
class ParseError : public Error {
public:
  using Error::Error;
};

/// A layer data source could not be resolved or loaded.
class DataError : public Error {
public:
  using Error::Error;
};

/// Argument outside an operation's numeric domain.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Optimal aspect ratio undefined because one direction carries no
/// switching load; callers that must proceed clamp to a configured bound.
class ZeroActivityError : public Error {
public:
  using Error::Error;
};

/// Numeric minimizer bracket does not contain the optimum.
class BracketError : public Error {
public:
  using Error::Error;
};

/// Activity was requested from a run with no transition opportunities.
class EmptySimulationError : public Error {
public:
  using Error::Error;
};

/// Simulated output disagrees with the reference product.
class FunctionalMismatchError : public Error {
public:
  using Error::Error;
};

/// Optimization needs activities from a simulation artifact or inline
/// overrides, and neither was provided.
class MissingActivityError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

/// Unknown sweep axis.
class InvalidAxisError : public ConfigError {
public:
  using ConfigError::ConfigError;
};

}  // namespace asysa
