#pragma once

#include <stdexcept>
#include <string>

namespace hptdyn {

// Combinatorial result or enumeration size does not fit the target integer width.
class CapacityError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

// Arguments outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The table or game shape is not handled by the requested operation.
class UnsupportedShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by payoff evaluation when a table carries validation violations.
class InvalidTableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical integration produced a non-finite state.
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hptdyn
