#pragma once

#include <stdexcept>
#include <string>

namespace thicket {

/// Malformed input: out-of-range indices, mismatched domains, parse failures.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An exhaustive search or enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A computed value contradicts a theorem the toolkit relies on. Always a bug
/// (or a false theorem); never a user error.
class ConsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace thicket
