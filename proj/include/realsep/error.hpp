#pragma once

#include <stdexcept>
#include <string>

namespace realsep {

/// Machine-readable failure categories. The CLI maps these to exit codes
/// and to the "code" field of JSON error documents.
enum class ErrorCode {
  invalid_input,
  parse_error,
  undetermined,        // precision cap reached before a sign/box was decided
  singular_curve,
  genericity_failure,  // no admissible chart/shear within the configured budget
  common_component,
  ambiguous_base_point,
  not_separating,      // degree_partition() called on a refutation
  internal,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_input: return "invalid_input";
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::undetermined: return "undetermined";
    case ErrorCode::singular_curve: return "singular_curve";
    case ErrorCode::genericity_failure: return "genericity_failure";
    case ErrorCode::common_component: return "common_component";
    case ErrorCode::ambiguous_base_point: return "ambiguous_base_point";
    case ErrorCode::not_separating: return "not_separating";
    case ErrorCode::internal: return "internal";
  }
  return "internal";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace realsep
