#pragma once

#include <stdexcept>
#include <string>

namespace ffcov {

/// Raised when an argument lies outside an operation's mathematical domain
/// (inverting zero, factoring the zero polynomial, a pole parameter, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a requested object would exceed a configured size limit.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computed quantity violates a theorem it must satisfy,
/// which can only mean a bug (or a numerical failure) upstream.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ffcov
