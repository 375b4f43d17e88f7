#pragma once

#include <stdexcept>

namespace qcurve {

// Bad arguments from a caller (maps to exit status 2 in the CLI).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DivisionByZero : std::domain_error {
  using std::domain_error::domain_error;
};

struct CompositionDomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// An exhaustive oracle was asked for an instance beyond its configured bound.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed object failed one of its own consistency checks.
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DependencyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace qcurve
