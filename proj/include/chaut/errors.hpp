#pragma once

#include <stdexcept>

namespace chaut {

/// Input text or a definition file could not be parsed.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A value violates a domain contract: letter out of range, unknown state,
/// non-invertible table, inadmissible alphabet rule.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A self-check on a computed witness failed. Signals a bug, not bad input.
struct VerificationError : std::logic_error {
  using std::logic_error::logic_error;
};

/// An exhaustive materialization would exceed the configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace chaut
