#pragma once

#include <stdexcept>
#include <string>

namespace pmatch {

// Bad construction parameters (prime width, alphabet vs. modulus, mode).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Caller broke an operation's precondition.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A text symbol fell outside the declared dense alphabet.
class AlphabetError : public std::out_of_range {
 public:
  AlphabetError(const std::string& what, std::uint64_t index)
      : std::out_of_range(what), index_(index) {}
  std::uint64_t index() const noexcept { return index_; }

 private:
  std::uint64_t index_;
};

// A guaranteed runtime bound (queue capacity, deadline, buffer size) was
// breached. At the configured prime width this means a fingerprint false
// positive or a scheduling bug; it is never swallowed.
class StructuralViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pmatch
