#pragma once

#include <stdexcept>
#include <string>

namespace starkjc {

// Input outside an operation's mathematical domain (negative index, non-finite value, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A caller-supplied precondition that is not a domain issue (grid too coarse, bad bracket, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// The requested field state is the zero vector (minus superposition at r = 0).
class DegenerateStateError : public DomainError {
public:
  using DomainError::DomainError;
};

// A computation would need more memory/terms than the configured hard limit.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A truncated Fock-space representation leaks too much mass; carries a suggested dimension.
class TruncationError : public ResourceError {
public:
  TruncationError(const std::string& what, int suggested_dim)
      : ResourceError(what), suggested_dim_(suggested_dim) {}
  int suggested_dim() const noexcept { return suggested_dim_; }

private:
  int suggested_dim_;
};

class NoInteriorMinimumError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class IntegrationError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace starkjc
