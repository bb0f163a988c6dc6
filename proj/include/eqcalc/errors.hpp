#pragma once

#include <stdexcept>
#include <string>

namespace eqcalc {

// Malformed or out-of-range user input (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An operation was called outside its documented domain.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A structure failed its own axioms (group table, chain map, cover, ...).
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string kind, std::string detail)
      : std::runtime_error(kind + ": " + detail), kind_(std::move(kind)), detail_(std::move(detail)) {}

  const std::string& kind() const { return kind_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string kind_;
  std::string detail_;
};

}  // namespace eqcalc
