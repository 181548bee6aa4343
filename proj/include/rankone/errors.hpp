#pragma once

#include <stdexcept>
#include <string>

namespace rankone {

// Misuse of an API: bad arguments, dimension mismatch, malformed input.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a hard resource cap (e.g. exact dispersion in high
// dimension, point counts that will not fit in memory).
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Floating-point hazard detected before it corrupts a result.
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace rankone
