#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nangle {

/// Malformed input or invalid arguments (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// JSON syntax error in an algebra file, with 1-based position.
class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// A mathematical hypothesis needed by a construction does not hold (CLI exit code 1).
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotFiniteDimensional : public MathError {
 public:
  using MathError::MathError;
};

class NotSelfInjective : public MathError {
 public:
  NotSelfInjective(const std::string& msg, std::size_t vertex) : MathError(msg), vertex_(vertex) {}
  std::size_t vertex() const { return vertex_; }

 private:
  std::size_t vertex_;
};

class NotAutomorphism : public MathError {
 public:
  enum class Reason { not_unital, not_multiplicative, singular, wrong_shape };
  NotAutomorphism(Reason r, const std::string& msg) : MathError(msg), reason_(r) {}
  Reason reason() const { return reason_; }

 private:
  Reason reason_;
};

class HypothesisViolated : public MathError {
 public:
  using MathError::MathError;
};

class ResourceLimit : public MathError {
 public:
  using MathError::MathError;
};

}  // namespace nangle
