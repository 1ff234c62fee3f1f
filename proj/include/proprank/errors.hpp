#pragma once

#include <stdexcept>
#include <string>

namespace proprank {

// Bad arguments or malformed inputs (mismatched m, x not in the active set, ...).
class InvalidInputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input rejected because it exceeds a configured enumeration limit.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A state that the algorithms guarantee cannot happen; reaching it is a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Profile text that does not parse; carries the offending line.
class ParseError : public InvalidInputError {
 public:
  ParseError(int line, const std::string& what)
      : InvalidInputError("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace proprank
