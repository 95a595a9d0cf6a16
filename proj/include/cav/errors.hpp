#pragma once

#include <stdexcept>
#include <string>

namespace cav {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DimensionError : Error { using Error::Error; };

// A function turned out to be identically +inf (or an operation demands properness).
struct ImproperError : Error { using Error::Error; };

// A point that was required to lie on a lattice does not.
struct LatticeError : Error { using Error::Error; };

// Query point not on the function's grid.
struct OffGridError : Error { using Error::Error; };

// Dual grid does not bracket the achieved difference quotients; carries the offending bound.
struct SlopeRangeError : Error {
    SlopeRangeError(const std::string& msg, double bound) : Error(msg), offending_bound(bound) {}
    double offending_bound;
};

struct NonConvexError : Error { using Error::Error; };

struct SizeCapError : Error { using Error::Error; };

// An extended-real operation would have produced -inf (properness violation).
struct MinusInfinityError : Error { using Error::Error; };

struct ParseError : Error {
    ParseError(const std::string& msg, int line_, int col_) : Error(msg), line(line_), col(col_) {}
    int line = 0;
    int col = 0;
};

struct ValidationError : Error { using Error::Error; };

} // namespace cav
