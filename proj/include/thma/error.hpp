#pragma once

#include <stdexcept>
#include <string>

namespace thma {

/// Base class for every fault raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad indices, mismatched domains, non-surjective maps.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A document that could not be read, parsed or type-checked.
class DocumentError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Input tables that violate the category or functor axioms.
class AxiomViolation : public Error {
 public:
  using Error::Error;
};

/// A level of a simplicial object would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed (a construction broke an identity it
/// is supposed to satisfy by definition).
class ConsistencyFault : public Error {
 public:
  using Error::Error;
};

}  // namespace thma
