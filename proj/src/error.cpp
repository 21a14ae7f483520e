#include "nonant/error.hpp"

namespace nonant {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage: return "usage";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kInvalidPartition: return "invalid-partition";
    case ErrorKind::kInstanceMismatch: return "instance-mismatch";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kAdversaryInconsistency: return "adversary-inconsistency";
    case ErrorKind::kOracleMismatch: return "oracle-mismatch";
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kNonNumericPayload: return "non-numeric-payload";
    case ErrorKind::kEmptyInput: return "empty-input";
  }
  return "unknown";
}

}  // namespace nonant
