#pragma once

#include <stdexcept>
#include <string>

namespace sepprob {

enum class ErrorCode {
  NON_TERMINATING,
  LOWER_PARAM_POLE,
  POLE,
  UNPAIRED_HALF_INTEGER,
  PRECISION_TOO_LOW,
  TAIL_NOT_GEOMETRIC,
  MOMENT_MISMATCH,
  DECOMPOSITION_FAILED,
  NOT_REAL,
  BAD_BIPARTITION,
  NOT_PSD,
  INVALID_ARGUMENT,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NON_TERMINATING: return "NON_TERMINATING";
    case ErrorCode::LOWER_PARAM_POLE: return "LOWER_PARAM_POLE";
    case ErrorCode::POLE: return "POLE";
    case ErrorCode::UNPAIRED_HALF_INTEGER: return "UNPAIRED_HALF_INTEGER";
    case ErrorCode::PRECISION_TOO_LOW: return "PRECISION_TOO_LOW";
    case ErrorCode::TAIL_NOT_GEOMETRIC: return "TAIL_NOT_GEOMETRIC";
    case ErrorCode::MOMENT_MISMATCH: return "MOMENT_MISMATCH";
    case ErrorCode::DECOMPOSITION_FAILED: return "DECOMPOSITION_FAILED";
    case ErrorCode::NOT_REAL: return "NOT_REAL";
    case ErrorCode::BAD_BIPARTITION: return "BAD_BIPARTITION";
    case ErrorCode::NOT_PSD: return "NOT_PSD";
    case ErrorCode::INVALID_ARGUMENT: return "INVALID_ARGUMENT";
  }
  return "UNKNOWN";
}

}  // namespace sepprob
