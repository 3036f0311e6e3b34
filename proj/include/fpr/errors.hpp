#pragma once

#include <stdexcept>
#include <string>

namespace fpr {

/// Thrown when an argument violates an operation's domain (kappa outside
/// (0,1], non-integer Fock photon number, M = 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A design target that no operating point can reach, e.g. Pr(e) >= 1/2.
class UnreachableTarget : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace detail
}  // namespace fpr
