#pragma once

#include <stdexcept>
#include <string>

namespace jchm {

/// Raised when a user-supplied parameter is out of its domain. `field()` names
/// the offending parameter so front ends can report it verbatim.
class InvalidParameter : public std::invalid_argument {
 public:
  InvalidParameter(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Iterative eigensolver exhausted its iteration cap.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A root or boundary bracket does not contain a sign change.
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace jchm
