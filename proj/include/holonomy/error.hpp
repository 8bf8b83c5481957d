#pragma once

#include <stdexcept>
#include <string>

namespace holonomy {

/// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class input_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class self_intersection_error : public input_error {
 public:
  using input_error::input_error;
};

class composability_error : public input_error {
 public:
  using input_error::input_error;
};

class group_mismatch_error : public input_error {
 public:
  using input_error::input_error;
};

/// A checked mathematical property failed at runtime (CLI exit code 3).
class property_violation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace holonomy
