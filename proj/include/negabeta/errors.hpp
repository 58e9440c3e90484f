#pragma once

#include <stdexcept>
#include <string>

namespace negabeta {

// Every failure raised by the library derives from Error so callers (the CLI
// in particular) can separate domain errors from usage errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NoRootAboveOne : public Error {
 public:
  using Error::Error;
};

class BaseMismatch : public Error {
 public:
  BaseMismatch() : Error("field elements belong to different bases") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by an element that vanishes at beta") {}
};

class OutOfDomain : public Error {
 public:
  using Error::Error;
};

class StepBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class NotCubic : public Error {
 public:
  using Error::Error;
};

class WitnessMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace negabeta
