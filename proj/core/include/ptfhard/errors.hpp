#pragma once

#include <stdexcept>
#include <string>

namespace ptfhard {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a product would exceed the configured degree cap.
struct DegreeCapError : Error {
    using Error::Error;
};

// Raised by evaluate() when a variable has no binding.
struct MissingBindingError : Error {
    using Error::Error;
};

// Raised when operands live in incompatible coordinate spaces.
struct DimensionMismatchError : Error {
    using Error::Error;
};

// Raised on malformed input files or out-of-range parameters.
struct InvalidInputError : Error {
    using Error::Error;
};

// Raised on bad command-line usage; maps to exit code 2.
struct UsageError : Error {
    using Error::Error;
};

} // namespace ptfhard
