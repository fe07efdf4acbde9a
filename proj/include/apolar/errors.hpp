#pragma once

#include <stdexcept>
#include <string>

namespace apolar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// variable count / field / truncation-degree disagreement between operands
struct MismatchError : Error {
    using Error::Error;
};

// truncation degree too small to represent the result exactly
struct TruncationError : Error {
    using Error::Error;
};

// operation-specific precondition failed (zero polynomial, bad degree, ...)
struct PreconditionError : Error {
    using Error::Error;
};

// substitution whose linear part is singular
struct NotAutomorphismError : Error {
    using Error::Error;
};

// a required root does not lie in the base field
struct RootAvailabilityError : Error {
    using Error::Error;
};

// resource cap (APOLAR_BUDGET) exceeded
struct BudgetError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t pos;
    ParseError(const std::string& msg, std::size_t at) : Error(msg), pos(at) {}
};

} // namespace apolar
