#pragma once

#include <stdexcept>
#include <string>

namespace insdel {

/// Caller violated a documented precondition (bad length, bad flag, mixed fields).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mathematically undefined operation, e.g. inverting zero.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A field description that is not a field; carries the factor that proves it.
class InvalidSpecError : public std::invalid_argument {
 public:
  InvalidSpecError(const std::string& what, unsigned long long witness)
      : std::invalid_argument(what), witness_(witness) {}
  unsigned long long witness() const noexcept { return witness_; }

 private:
  unsigned long long witness_;
};

/// Parameters that cannot produce a valid instance (q < n, m0 < 1, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exhaustive routine asked to run beyond its configured budget.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A search over a finite space found nothing acceptable.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace insdel
