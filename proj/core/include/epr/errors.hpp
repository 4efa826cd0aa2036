#pragma once

#include <stdexcept>
#include <string>

namespace epr {

// Malformed or invalid user input (instances, flags, cached files).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
 public:
  ParseError(int line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Raised when a synthesized cycle state fails a posteriori verification.
class SynthesisFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace epr
