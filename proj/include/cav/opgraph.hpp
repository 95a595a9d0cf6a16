#pragma once

#include <utility>
#include <vector>

#include "cav/rational.hpp"

namespace cav {

// Finite multifunction graph: (point, dual point) pairs with set semantics and
// a canonical lexicographic ordering.
struct OperatorGraph {
    int dim = 0; // of E; dual points share it
    std::vector<std::pair<RatVec, RatVec>> pairs;

    static OperatorGraph from_pairs(int dim, std::vector<std::pair<RatVec, RatVec>> raw);

    bool empty() const { return pairs.empty(); }
    std::size_t size() const { return pairs.size(); }
    bool operator==(const OperatorGraph& o) const { return dim == o.dim && pairs == o.pairs; }

    std::vector<RatVec> domain() const; // sorted unique first components
    std::vector<RatVec> range() const;  // sorted unique second components
    std::vector<RatVec> image_of(const RatVec& x) const;
    std::vector<RatVec> preimage_of(const RatVec& xs) const;
};

} // namespace cav
