#pragma once

#include <stdexcept>

namespace gnplab {

// Requested size exceeds a configured structural limit (vertex cap, oracle cap).
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Root bracketing failed: no sign change on the search interval.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A scan exhausted its range without meeting its stopping condition.
struct RangeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gnplab
