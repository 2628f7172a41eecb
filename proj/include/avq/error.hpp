#pragma once

#include <stdexcept>
#include <string>

namespace avq {

enum class ErrorCode {
  InvalidInput,
  NotWeil,
  EndpointRoot,
  PrecisionExhausted,
  IrrationalSplit,
  SearchBudgetExceeded,
  RandomizedInconclusive,
  CentreMismatch,
  RelationViolation,
};

const char* to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }
  // Precision and search-budget failures may succeed with a larger cap.
  bool retriable() const {
    return code_ == ErrorCode::PrecisionExhausted ||
           code_ == ErrorCode::SearchBudgetExceeded ||
           code_ == ErrorCode::RandomizedInconclusive;
  }

 private:
  ErrorCode code_;
};

}  // namespace avq
