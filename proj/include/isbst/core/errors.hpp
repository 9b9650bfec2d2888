#pragma once

#include <stdexcept>
#include <string>

namespace isbst {

/// Input or configuration that breaks a domain invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or out-of-range JSON document. `field()` names the offending field.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string field, const std::string& detail)
      : std::runtime_error(field + ": " + detail), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Caller broke an operation's precondition (e.g. mismatched objective sets).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace isbst
