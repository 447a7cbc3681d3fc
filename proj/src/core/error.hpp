#pragma once

#include <stdexcept>
#include <string>

namespace vpmcf {

enum class ErrorCode {
  invalid_argument = 1,
  no_boundary,
  geometry_mismatch,
  bracket_failure,
  iteration_limit,
  rim_contact,
  precondition_failed,
  io_failure,
  not_converged,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) raise(code, message);
}

}  // namespace vpmcf
