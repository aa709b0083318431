#pragma once

#include <stdexcept>

namespace qmie {

/// Argument outside the domain of a function (NaN, negative radius, |m| > l, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested order exceeds the configured hard cap.
class ResourceError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// A numerical procedure did not reach its requested tolerance.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two routes that must agree did not.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Channel with alpha = beta = 0; the phase shift is undefined.
class DegenerateChannelError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Kernel evaluated exactly on its pole |k| = |k'|.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qmie
