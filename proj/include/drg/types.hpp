#pragma once

// Core identifiers and error types shared across the library.

#include <cstdint>
#include <stdexcept>

namespace drg {

// Nodes are 1-based everywhere. Negative and zero values appear only
// transiently inside window arithmetic.
using NodeIndex = std::int64_t;

// A point of the m x m integer grid, coordinates in [0, m).
struct GridPair {
    NodeIndex x = 0;
    NodeIndex y = 0;

    friend bool operator==(const GridPair&, const GridPair&) = default;
};

// Thrown when an exact checker refuses an instance too large to enumerate
// exhaustively. Distinct from std::domain_error (malformed parameters) so
// callers can map refusals to a dedicated exit code.
class guard_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace drg
