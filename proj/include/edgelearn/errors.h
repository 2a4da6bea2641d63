#pragma once

#include <stdexcept>

namespace edgelearn {

// Malformed user input: bad config keys, unknown names, unparsable files.
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed parameters that no instance satisfies (2m > n, odd clique pair, ...),
// or a randomized generator that ran out of retries.
class InfeasibleInstance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A charge pushed the quantum counter past OracleOptions::quantum_budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace edgelearn
