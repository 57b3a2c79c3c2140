#pragma once

#include <stdexcept>
#include <string>

namespace k3zd {

/// Precondition violated by the caller (zero where nonzero is required,
/// composite where a prime is required, malformed matrix, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The operation needs det(gram) != 0.
class DegenerateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A divisor with a negative coefficient was passed where an effective
/// combination of the modeled curves is required.
class NotEffectiveError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// An asserted mathematical invariant failed. Never caught silently.
class InternalInconsistency : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// An exhaustive search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace k3zd
