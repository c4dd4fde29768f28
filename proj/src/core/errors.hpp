#pragma once

#include <stdexcept>
#include <string>

namespace qforge {

// An enumeration, permanent or search exceeded its configured guard.
class TooLargeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A search exhausted its range or budget without finding a solution.
class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to meet its accuracy contract.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qforge
