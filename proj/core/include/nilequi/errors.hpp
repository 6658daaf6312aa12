#pragma once

#include <stdexcept>
#include <string>

namespace nilequi {

/// Vectors or matrices of incompatible sizes were combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input data violates a structural invariant (antisymmetry, Jacobi, adapted basis, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain where an operation is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The exact decision procedures do not cover the given input variant.
class UndecidableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace nilequi
