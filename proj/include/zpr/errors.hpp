#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace zpr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on the inputs was violated (bad dimensions, digits out of
/// range, rows that are not a p-basis, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would need more candidates than the caller allowed.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, long double required, std::uint64_t budget)
      : Error(what), required_(required), budget_(budget) {}

  long double required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  long double required_;
  std::uint64_t budget_;
};

/// The layered decomposition hit a stack that is rank deficient mod p; the
/// rational completion step needed to continue is not implemented.
class DegenerateDecomposition : public Error {
 public:
  using Error::Error;
};

/// A search for an encoder ran out of candidates.
class ConstructionFailure : public Error {
 public:
  ConstructionFailure(const std::string& what, std::uint64_t attempts)
      : Error(what), attempts_(attempts) {}

  std::uint64_t attempts() const noexcept { return attempts_; }

 private:
  std::uint64_t attempts_;
};

/// Two independent computations of the same quantity disagreed.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace zpr
