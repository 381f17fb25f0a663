#pragma once

#include <stdexcept>

namespace unitri {

// Input violates a documented precondition (bounds, dimensions, non-prime modulus).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Arithmetic request outside the domain of the operation (inverse of zero).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A configured resource guard would be exceeded.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed request that the implementation deliberately does not cover.
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal consistency failure; a bug, or a retryable modulus choice in the oracle.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Malformed input file.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace unitri
