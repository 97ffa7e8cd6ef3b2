#pragma once

#include <optional>
#include <string>

#include "folddcs/oracle.hpp"

namespace folddcs {

// Listed in reporting priority: when several checks fail, the first one
// listed here is reported.
enum class RejectReason {
  kNone,
  kMessageOutOfBounds,
  kEvaluationProofFail,
  kConsistencyFail,
  kSumMismatch,
  kUnivariateFail,
};

std::string to_string(RejectReason r);

struct RunResult {
  bool accept = false;
  RejectReason reason = RejectReason::kNone;
  Transcript transcript;
  // Fold-DCS: S^(m) as computed by the verifier.
  std::optional<FieldElement> final_sum;
};

// Collects failed checks and keeps the highest-priority one.
class Verdict {
 public:
  void fail(RejectReason r) {
    if (reason_ == RejectReason::kNone || static_cast<int>(r) < static_cast<int>(reason_)) {
      reason_ = r;
    }
  }
  void check(bool ok, RejectReason r) {
    if (!ok) fail(r);
  }
  bool accept() const { return reason_ == RejectReason::kNone; }
  RejectReason reason() const { return reason_; }

 private:
  RejectReason reason_ = RejectReason::kNone;
};

}  // namespace folddcs
