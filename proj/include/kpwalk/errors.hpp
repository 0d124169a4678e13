#pragma once

#include <stdexcept>
#include <string>

namespace kpwalk {

// Bad parameters or a violated precondition (maps to CLI exit code 1).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The walk does not drift to -infinity, or a queue is overloaded.
class DriftError : public InputError {
 public:
  using InputError::InputError;
};

// An argument lies outside the convergence region of a generating function.
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

// Two independent routes disagree, or a certified bound exceeds its
// tolerance (maps to CLI exit code 2).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kpwalk
