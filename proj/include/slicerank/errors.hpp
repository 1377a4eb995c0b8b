#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slicerank {

// Invalid arguments: k > n, mismatched dimensions, t outside (0,1), ...
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

// A computation was refused because it would exceed a configured budget.
// `required` carries the estimate of what would have been needed.
class ResourceError : public std::runtime_error {
public:
  ResourceError(const std::string& what, double required, double limit)
      : std::runtime_error(what), required_(required), limit_(limit) {}

  double required() const noexcept { return required_; }
  double limit() const noexcept { return limit_; }

private:
  double required_;
  double limit_;
};

// Raised when an internal bound that must hold by construction is violated.
class InternalInconsistency : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace slicerank
