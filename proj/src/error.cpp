#include "frobtest/certified.hpp"
#include "frobtest/error.hpp"

namespace frobtest {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::UnknownVariable: return "UNKNOWN_VARIABLE";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::Overflow: return "EXPONENT_OVERFLOW";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::NotArtinian: return "NOT_ARTINIAN";
    case ErrorCode::NotSystemOfParameters: return "NOT_SOP";
    case ErrorCode::UnboundedSupport: return "UNBOUNDED_SUPPORT";
    case ErrorCode::NotGraded: return "NOT_GRADED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::FailedAfterTries: return "FAILED_AFTER_TRIES";
    case ErrorCode::SamplingExhausted: return "SAMPLING_EXHAUSTED";
    case ErrorCode::InvariantViolation: return "INVARIANT_VIOLATION";
    case ErrorCode::Io: return "IO_ERROR";
  }
  return "UNKNOWN";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::Certified: return "CERTIFIED";
    case Status::CertifiedWindow: return "CERTIFIED-WINDOW";
    case Status::Uncertified: return "UNCERTIFIED";
    case Status::Truncated: return "TRUNCATED";
  }
  return "UNKNOWN";
}

int weakness(Status s) {
  switch (s) {
    case Status::Certified: return 0;
    case Status::CertifiedWindow: return 1;
    case Status::Uncertified: return 2;
    case Status::Truncated: return 3;
  }
  return 3;
}

}  // namespace frobtest
