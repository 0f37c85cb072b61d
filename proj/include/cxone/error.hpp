#pragma once

#include <stdexcept>
#include <string>

namespace cxone {

/// Raised when an operation's mathematical precondition does not hold.
/// `code()` is a stable machine-readable identifier (e.g. "NotNonProper").
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Raised for malformed input (bad JSON, wrong shapes, non-integer entries).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cxone
