#pragma once

#include <stdexcept>
#include <string>

namespace frobtest {

enum class ErrorCode {
  Parse,
  UnknownVariable,
  DimensionMismatch,
  Overflow,
  CapExceeded,
  NotArtinian,
  NotSystemOfParameters,
  UnboundedSupport,
  NotGraded,
  InvalidArgument,
  FailedAfterTries,
  SamplingExhausted,
  InvariantViolation,
  Io,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; `code()` distinguishes the cause.
/// CapExceeded is the one callers routinely catch: it maps to a TRUNCATED
/// certificate instead of a failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure carrying the zero-based character offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(ErrorCode::Parse, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace frobtest
