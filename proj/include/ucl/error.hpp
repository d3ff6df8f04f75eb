#ifndef UCL_ERROR_HPP
#define UCL_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ucl {

enum class ErrorCode {
  InvalidArgument,
  RingMismatch,
  FieldMismatch,
  UnknownVariable,
  ExponentOverflow,
  NotSquare,
  ShapeMismatch,
  NonLinearEntry,
  NotHomogeneous,
  PartialAssignment,
  DivisionFails,
  InternalInconsistency,
  Unsupported,
  NondiagonalInput,
  UnverifiedInput,
  RotationMismatch,
  Degenerate,
  TooFewPoints,
  BadPrime,
  Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Syntax error in polynomial or matrix text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(ErrorCode::Parse, "line " + std::to_string(line) + ", column " +
                                    std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An entry of a supposedly y-linear matrix has a term of y-degree != 1.
class NonLinearEntry : public Error {
 public:
  NonLinearEntry(std::size_t row, std::size_t col)
      : Error(ErrorCode::NonLinearEntry,
              "entry (" + std::to_string(row) + "," + std::to_string(col) +
                  ") is not y-linear"),
        row_(row),
        col_(col) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace ucl

#endif  // UCL_ERROR_HPP
