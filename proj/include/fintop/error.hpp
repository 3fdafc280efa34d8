#pragma once

#include <stdexcept>
#include <string>

namespace fintop {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error { using Error::Error; };
class CycleError : public Error { using Error::Error; };
class ImageError : public Error { using Error::Error; };
class ContinuityError : public Error { using Error::Error; };
class DomainMismatch : public Error { using Error::Error; };
class EmptyDomain : public Error { using Error::Error; };
class SubspaceError : public Error { using Error::Error; };
class ComponentInvalid : public Error { using Error::Error; };
class SquareInvalid : public Error { using Error::Error; };
class MissingWitness : public Error { using Error::Error; };
class NonPrimeModulus : public Error { using Error::Error; };
class OrderMissing : public Error { using Error::Error; };
class PreconditionError : public Error { using Error::Error; };

/// Thrown when a search leaves its configured budget. The exact value is
/// known to lie in [lower, upper]; upper < 0 means no finite bound is known.
class SearchBudgetExceeded : public Error {
 public:
  SearchBudgetExceeded(const std::string& what, int lower, int upper)
      : Error(what), lower_(lower), upper_(upper) {}
  int lower() const noexcept { return lower_; }
  int upper() const noexcept { return upper_; }

 private:
  int lower_;
  int upper_;
};

/// Malformed input file; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace fintop
