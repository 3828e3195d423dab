#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace frob {

/// Coarse error category. The CLI maps each category onto an exit code.
enum class ErrorKind {
  validation,      // bad input: parse, dimension, degree, size limits
  numerical,       // root finding or reconstruction did not succeed
  not_frobenius,   // the functional is not a Frobenius n-homomorphism
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Short machine-readable identifier, e.g. "degree_overflow".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

/// An enumeration was asked for a ground size above the configured limit.
class SizeLimitError : public Error {
 public:
  explicit SizeLimitError(const std::string& message)
      : Error(ErrorKind::validation, "size_limit", message) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& message)
      : Error(ErrorKind::validation, "dimension_mismatch", message) {}
};

/// A moment functional was applied to something above its degree bound.
class DegreeOverflowError : public Error {
 public:
  explicit DegreeOverflowError(const std::string& message)
      : Error(ErrorKind::validation, "degree_overflow", message) {}
};

class LabelMismatchError : public Error {
 public:
  explicit LabelMismatchError(const std::string& message)
      : Error(ErrorKind::validation, "label_mismatch", message) {}
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& message)
      : Error(ErrorKind::validation, "configuration", message) {}
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error(ErrorKind::validation, "invalid_argument", message) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(ErrorKind::validation, "parse",
              message + " at line " + std::to_string(line) + ", column " +
                  std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// The functional does not vanish on the ideal it is supposed to factor through.
class AnnihilationError : public Error {
 public:
  explicit AnnihilationError(const std::string& message)
      : Error(ErrorKind::validation, "annihilation", message) {}
};

class NotFrobeniusError : public Error {
 public:
  explicit NotFrobeniusError(const std::string& message)
      : Error(ErrorKind::not_frobenius, "not_frobenius", message) {}
};

class InconsistencyError : public Error {
 public:
  explicit InconsistencyError(const std::string& message)
      : Error(ErrorKind::numerical, "inconsistency", message) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& message, std::string code = "numerical")
      : Error(ErrorKind::numerical, std::move(code), message) {}
};

/// Two root clusters are too close to be told apart; try another separating form.
class AmbiguousClusteringError : public NumericalError {
 public:
  explicit AmbiguousClusteringError(const std::string& message)
      : NumericalError(message, "ambiguous_clustering") {}
};

/// Exact root extraction found roots outside Q(i).
class IrrationalRootsError : public NumericalError {
 public:
  explicit IrrationalRootsError(const std::string& message)
      : NumericalError(message, "irrational_roots") {}
};

class ReconstructionError : public NumericalError {
 public:
  ReconstructionError(const std::string& message, std::string best_residual)
      : NumericalError(message, "reconstruction"), best_residual_(std::move(best_residual)) {}

  const std::string& best_residual() const noexcept { return best_residual_; }

 private:
  std::string best_residual_;
};

}  // namespace frob
