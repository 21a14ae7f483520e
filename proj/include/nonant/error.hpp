#pragma once

#include <stdexcept>
#include <string>

namespace nonant {

// Failure categories. The CLI maps each one to a process exit code.
enum class ErrorKind {
  kUsage,
  kValidation,
  kInvalidPartition,
  kInstanceMismatch,
  kInfeasible,
  kAdversaryInconsistency,
  kOracleMismatch,
  kBudgetExceeded,
  kNonNumericPayload,
  kEmptyInput,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nonant
