#pragma once

#include <stdexcept>
#include <string>

namespace vecsum {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sparse entry carries a negative coordinate index.
struct InvalidIndex : Error {
    using Error::Error;
};

// A scalar argument is NaN or infinite.
struct InvalidScalar : Error {
    using Error::Error;
};

// Weights are negative or do not sum to 1 within tolerance.
struct InvalidDistribution : Error {
    using Error::Error;
};

// Structurally invalid argument (empty set, mismatched lengths, ...).
struct InvalidInput : Error {
    using Error::Error;
};

// Construction-time parameter violates a documented precondition.
struct InvalidConfig : Error {
    using Error::Error;
};

// A summary was requested for a stream that has seen no points.
struct EmptyStream : Error {
    using Error::Error;
};

// Proximity query for a user id that was never ingested.
struct UnknownUser : Error {
    using Error::Error;
};

// Count-min only supports non-negative updates.
struct UnsupportedNegative : Error {
    using Error::Error;
};

// A quantity that is provably positive for valid inputs came out <= 0.
struct NumericalFailure : Error {
    using Error::Error;
};

// Dataset file missing or unreadable; message includes the path.
struct IoError : Error {
    using Error::Error;
};

} // namespace vecsum
