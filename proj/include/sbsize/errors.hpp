#pragma once

#include <stdexcept>

namespace sbsize {

// Bad or inconsistent input (files, ranges, shapes). CLI maps this to exit code 2.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Degenerate numerical situation (zero-variance fit, non-convergent solve).
// CLI maps this to exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sbsize
