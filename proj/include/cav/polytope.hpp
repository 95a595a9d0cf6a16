#pragma once

#include <vector>

#include "cav/rational.hpp"

namespace cav {

// Convex-compact set given by a finite vertex list. Support values and
// membership are exact.
class Polytope {
public:
    Polytope(int dim, std::vector<RatVec> vertices);

    static Polytope point(const RatVec& p);
    static Polytope interval(const Rat& lo, const Rat& hi); // 1-d
    static Polytope box(const RatVec& lo, const RatVec& hi);

    int dim() const { return dim_; }
    const std::vector<RatVec>& vertices() const { return verts_; }

    // sup <K, s> = max over vertices; finite for every s.
    Rat support(const RatVec& s) const;
    std::size_t support_argmax(const RatVec& s) const; // first maximizer
    Rat min_pairing(const RatVec& s) const;            // min over vertices

    // Exact convex-combination feasibility over the vertices.
    bool contains(const RatVec& p) const;

    Polytope negated() const;

private:
    int dim_;
    std::vector<RatVec> verts_;
};

} // namespace cav
