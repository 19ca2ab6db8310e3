#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class UnknownPredicate : public Error {
 public:
  using Error::Error;
};

class ArityConflict : public Error {
 public:
  using Error::Error;
};

class InvalidRule : public Error {
 public:
  using Error::Error;
};

class DuplicateRuleId : public Error {
 public:
  using Error::Error;
};

class NotASubset : public Error {
 public:
  using Error::Error;
};

class SupportNotPresent : public Error {
 public:
  using Error::Error;
};

class DuplicateTrigger : public Error {
 public:
  using Error::Error;
};

class AtomNotInDerivation : public Error {
 public:
  using Error::Error;
};

class NotTerminating : public Error {
 public:
  using Error::Error;
};

class EmptyRuleset : public Error {
 public:
  using Error::Error;
};

class InvalidQuery : public Error {
 public:
  using Error::Error;
};

/// Syntax error with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace kbound
