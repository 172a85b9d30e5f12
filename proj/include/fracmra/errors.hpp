#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracmra {

/// Base of every error raised by the library. `kind()` is the stable
/// machine-readable name used in CLI error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}
  std::string_view kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FRACMRA_DEFINE_ERROR(Name)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& message) : Error(#Name, message) {} \
  };

FRACMRA_DEFINE_ERROR(SpecialAngleError)
FRACMRA_DEFINE_ERROR(CoverageError)
FRACMRA_DEFINE_ERROR(NotRieszError)
FRACMRA_DEFINE_ERROR(InconsistencyError)
FRACMRA_DEFINE_ERROR(CatalogError)
FRACMRA_DEFINE_ERROR(SpecError)

#undef FRACMRA_DEFINE_ERROR

/// Raised when a grid cannot resolve a chirp factor without aliasing.
class AliasError : public Error {
 public:
  AliasError(double alpha, double step, const std::string& message)
      : Error("AliasError", message), alpha_(alpha), step_(step) {}
  double alpha() const noexcept { return alpha_; }
  double step() const noexcept { return step_; }

 private:
  double alpha_;
  double step_;
};

/// Malformed input file. `line()` is 1-based; 0 when not tied to a line.
class FormatError : public Error {
 public:
  FormatError(std::size_t line, const std::string& message)
      : Error("FormatError", message), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fracmra
