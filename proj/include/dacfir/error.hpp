#pragma once

#include <stdexcept>
#include <string>

namespace dacfir {

/// Failure categories. The CLI maps each one to a distinct exit code.
enum class ErrorCode {
  InvalidArgument = 2,
  InvalidCombination = 3,
  NonConvergence = 4,
  OrderCapExceeded = 5,
  UnknownParameters = 6,
  Io = 7,
  Format = 8,
  Internal = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code);

}  // namespace dacfir
