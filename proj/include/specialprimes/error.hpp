#pragma once

#include <stdexcept>
#include <string>

namespace sprimes {

// Mathematical precondition violated (unit ideal where a proper one is needed,
// division by zero, contract violations between algorithm steps).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public MathError {
 public:
  DivisionByZero() : MathError("division by zero in F_p") {}
};

class OverflowError : public MathError {
 public:
  using MathError::MathError;
};

// Objects from different rings, or matrices/vectors of incompatible shape.
class ContextError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An iteration or computation cap was hit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line = 0, int column = 0)
      : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string format(const std::string& msg, int line, int column) {
    if (line <= 0) return msg;
    return std::to_string(line) + ":" + std::to_string(column) + ": " + msg;
  }

  int line_;
  int column_;
};

}  // namespace sprimes
