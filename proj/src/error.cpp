#include "dacfir/error.hpp"

namespace dacfir {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::InvalidCombination: return "invalid_combination";
    case ErrorCode::NonConvergence: return "non_convergence";
    case ErrorCode::OrderCapExceeded: return "order_cap_exceeded";
    case ErrorCode::UnknownParameters: return "unknown_parameters";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Format: return "format_error";
    case ErrorCode::Internal: return "internal_error";
  }
  return "unknown";
}

}  // namespace dacfir
