#pragma once

#include <stdexcept>
#include <string>

namespace nisbound {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violation: parameter out of range, mismatched dimensions.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A computed quantity left its admissible range by more than rounding slack.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Exhaustive search refused because the projected work exceeds the budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nisbound
