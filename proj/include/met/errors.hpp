#pragma once

#include <stdexcept>
#include <string>

namespace met {

// Input outside an operation's mathematical domain (bad probability, cyclic
// graph handed to a forest routine, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A referenced entity does not exist (e.g. deleting a non-edge).
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

// Instance exceeds a configured size cap; the message names the cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configurable work budget (memo size, node count, step count) ran out.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric validation gate failed; carries the offending residual.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace met
