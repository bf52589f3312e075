#pragma once

#include <stdexcept>
#include <string>

namespace spdmean {

enum class ErrorKind {
  kNumericalFailure,
  kDomain,
  kSingularTransform,
  kShape,
  kEmptyInput,
  kMeasure,
  kIncomparable,
  kNonConvergence,
  kMonotonicityViolation,
  kParse,
};

const char* to_string(ErrorKind kind);

/// Base class of every exception thrown by the library. The kind lets callers
/// (the CLI in particular) map failures to exit codes without RTTI ladders.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown when an iterative solver exhausts its iteration budget.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, int iterations, double last_step)
      : Error(ErrorKind::kNonConvergence, what), iterations_(iterations), last_step_(last_step) {}

  int iterations() const noexcept { return iterations_; }
  double last_step() const noexcept { return last_step_; }

 private:
  int iterations_;
  double last_step_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kNumericalFailure: return "NumericalFailure";
    case ErrorKind::kDomain: return "DomainError";
    case ErrorKind::kSingularTransform: return "SingularTransform";
    case ErrorKind::kShape: return "ShapeError";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kMeasure: return "MeasureError";
    case ErrorKind::kIncomparable: return "Incomparable";
    case ErrorKind::kNonConvergence: return "NonConvergence";
    case ErrorKind::kMonotonicityViolation: return "MonotonicityViolation";
    case ErrorKind::kParse: return "ParseError";
  }
  return "Error";
}

}  // namespace spdmean
