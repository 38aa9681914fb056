#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace priorlab {

// Base of every error the library throws.  `kind` is a stable machine-readable
// tag; `op` names the operation that raised it.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string op, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)), op_(std::move(op)) {}

  const std::string& kind() const noexcept { return kind_; }
  const std::string& op() const noexcept { return op_; }

 private:
  std::string kind_;
  std::string op_;
};

#define PRIORLAB_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                         \
   public:                                                            \
    Name(std::string op, const std::string& msg)                      \
        : Error(#Name, std::move(op), msg) {}                         \
  };

// Numerical / runtime failures.
PRIORLAB_DEFINE_ERROR(DomainError)
PRIORLAB_DEFINE_ERROR(NotPositiveDefinite)
PRIORLAB_DEFINE_ERROR(Separation)
PRIORLAB_DEFINE_ERROR(NotConverged)
PRIORLAB_DEFINE_ERROR(DegenerateProposal)
PRIORLAB_DEFINE_ERROR(LengthMismatch)
PRIORLAB_DEFINE_ERROR(TooFewDraws)
PRIORLAB_DEFINE_ERROR(EmptyGrid)
PRIORLAB_DEFINE_ERROR(UnsimulablePrior)

// Input / configuration failures.
PRIORLAB_DEFINE_ERROR(SchemaError)
PRIORLAB_DEFINE_ERROR(EmptyData)
PRIORLAB_DEFINE_ERROR(UnknownKey)
PRIORLAB_DEFINE_ERROR(MissingRequired)
PRIORLAB_DEFINE_ERROR(TypeError)

#undef PRIORLAB_DEFINE_ERROR

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error("ParseError", "load_binary_csv",
              "line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ": " + reason),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// True for errors caused by user input rather than numerics (exit code 1).
inline bool is_config_error(const Error& e) {
  const std::string_view k = e.kind();
  return k == "SchemaError" || k == "EmptyData" || k == "UnknownKey" ||
         k == "MissingRequired" || k == "TypeError" || k == "ParseError";
}

}  // namespace priorlab
