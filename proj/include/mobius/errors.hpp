#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mobius {

// Input exceeds a configured size ceiling (table bits, spectrum bits, ...).
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// Argument outside the mathematical domain of an operation (even residue, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A hypothesis the caller must establish does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A proven inequality or identity failed at run time. Always a bug.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace mobius
