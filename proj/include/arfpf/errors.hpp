#pragma once

#include <stdexcept>
#include <string>

namespace arfpf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: parse errors, inconsistent rotations, missing weights,
// non-even edge sets handed to the Fisher extension.
class InputError : public Error {
 public:
  using Error::Error;
};

class StructuralError : public InputError {
 public:
  using InputError::InputError;
};

// An exhaustive enumeration would exceed its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A mathematical invariant that must hold for any valid input failed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace arfpf
