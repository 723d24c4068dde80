#pragma once

#include <stdexcept>
#include <string>

namespace submax {

// Solver or verifier parameters outside their admissible domain.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed instance data; the message names the offending field.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exhaustive operation was asked to run on a ground set too large
// for enumeration. Refusal is hard: there is no sampling fallback.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Element id out of range or mismatched ground sets.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace submax
