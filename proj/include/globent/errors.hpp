#pragma once

#include <stdexcept>
#include <string>

namespace globent {

// Input has the wrong length, qubit count or index range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A vector that must be (or become) normalized is zero or off-norm.
class NormError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotSymmetric : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class EntangledInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Malformed state file; what() names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace globent
