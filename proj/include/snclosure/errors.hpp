#pragma once

#include <stdexcept>
#include <string>

namespace snclosure {

// Thrown when close() is asked for a rank beyond the configured guard.
struct resource_guard_error : std::runtime_error {
    int rank;
    int limit;
    resource_guard_error(int rank_, int limit_, std::string what_)
        : std::runtime_error(std::move(what_)), rank(rank_), limit(limit_) {}
};

// Shape or parent mismatches between operands.
struct mismatch_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Operation not defined for the given object (e.g. discriminant of a
// closure with torsion, grading of a non-degenerate ring).
struct unsupported_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace snclosure
