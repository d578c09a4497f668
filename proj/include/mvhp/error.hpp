#pragma once

#include <stdexcept>
#include <string>

namespace mvhp {

// Error kinds raised by the core. Each kind belongs to exactly one
// category (input, numerical, internal); the category decides the CLI
// exit code.
enum class ErrorCode {
  InvalidArgument,
  Parse,
  MissingHeader,
  NonNumericCell,
  TooShort,
  DimensionMismatch,
  NotSymmetric,
  MissingAggregate,
  LagTooLarge,
  Io,
  NotPositiveDefinite,
  NoConvergence,
  DegenerateLeadingCoefficient,
  NegativeSnr,
  OutOfInvertibleRange,
  ZeroResidualVariance,
  NegativeSnrEigenvalue,
  Internal,
};

enum class ErrorCategory { Input = 1, Numerical = 2, Internal = 3 };

ErrorCategory category(ErrorCode code) noexcept;
const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return mvhp::category(code_); }

 private:
  ErrorCode code_;
};

// Parse failures carry 1-based file coordinates (row counts the header line).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t row, std::size_t column, const std::string& what)
      : Error(code, what + " (row " + std::to_string(row) + ", column " + std::to_string(column) + ")"),
        row_(row),
        column_(column) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t row_;
  std::size_t column_;
};

}  // namespace mvhp
