#pragma once

#include <stdexcept>
#include <string>

namespace lebdyn {

/// Caller passed arguments outside an operation's contract (bad id, empty grid, ...).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact solver or enumeration exceeded its configured work budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A synthesized quantity would leave the representable double range.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lebdyn
