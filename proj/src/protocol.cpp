#include "folddcs/protocol.hpp"

namespace folddcs {

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::kNone: return "none";
    case RejectReason::kMessageOutOfBounds: return "MessageOutOfBounds";
    case RejectReason::kEvaluationProofFail: return "EvaluationProofFail";
    case RejectReason::kConsistencyFail: return "ConsistencyFail";
    case RejectReason::kSumMismatch: return "SumMismatch";
    case RejectReason::kUnivariateFail: return "UnivariateFail";
  }
  return "?";
}

}  // namespace folddcs
