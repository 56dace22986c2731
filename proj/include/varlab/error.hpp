#pragma once

#include <stdexcept>
#include <string>

namespace varlab {

  // Malformed input: bad word, bad file, bad identity string.
  class InputError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
  };

  // Structurally valid input that violates an operation's precondition
  // (girth, uniformity, isolated vertices, parity of n, ...).
  class PreconditionError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
  };

  // A configured budget or cap was hit before the computation finished.
  class BudgetExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
  };

  // A machine check of a mathematical claim failed.
  class Falsified : public std::logic_error {
   public:
    using std::logic_error::logic_error;
  };

}  // namespace varlab
