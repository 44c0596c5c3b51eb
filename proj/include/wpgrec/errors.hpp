#pragma once
#include <stdexcept>
#include <string>

namespace wpgrec {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Mismatched tensor shapes, bad operand ranks.
struct ShapeError : Error {
    using Error::Error;
};

// Unreadable/invalid input files, out-of-range ids, empty results.
struct DataError : Error {
    using Error::Error;
};

// NaN losses, failed numerical assertions.
struct NumericError : Error {
    using Error::Error;
};

} // namespace wpgrec
