#pragma once

#include <stdexcept>
#include <string>

namespace lobsterctl {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  io = 3,
  not_tree = 4,
  not_lobster = 5,
  not_connected = 6,
  limit_exceeded = 7,
  numerical = 8,
  internal = 9,
};

// All library failures are reported through this exception; the C API maps
// `code()` onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lobsterctl
