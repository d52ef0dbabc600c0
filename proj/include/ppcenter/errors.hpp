#pragma once

#include <stdexcept>
#include <string>

namespace ppc {

// Malformed input text (instance files, ORLIB files, LP files).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppc
