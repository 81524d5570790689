#pragma once

#include <stdexcept>

namespace siegel {

/// An enumeration visited more nodes than its configured budget.
struct BudgetExceeded : std::runtime_error {
  BudgetExceeded() : std::runtime_error("budget exceeded") {}
};

/// A computed quantity contradicts a proven inequality; always a bug.
struct TheoremViolation : std::logic_error {
  explicit TheoremViolation(const std::string& what)
      : std::logic_error("theorem violation - implementation bug: " + what) {}
};

/// The instance is beyond a configured size cap.
struct InstanceTooLarge : std::runtime_error {
  InstanceTooLarge() : std::runtime_error("instance too large") {}
};

}  // namespace siegel
