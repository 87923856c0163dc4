#pragma once

#include <stdexcept>
#include <string>

namespace usc {

enum class ErrorCode {
  invalid_argument,
  non_hermitian,
  not_converged,
  config,
  io,
};

// Every failure raised by the library carries one of the codes above; the C
// API maps them onto usc_status values.
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

}  // namespace usc
