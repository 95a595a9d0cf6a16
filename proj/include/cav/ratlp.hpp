#pragma once

#include <cstddef>
#include <vector>

#include "cav/rational.hpp"

namespace cav {

// Small dense exact-rational LP in equality form:
//     min c^T x   s.t.  A x = b,  x >= 0.
// Two-phase tableau simplex with Bland's rule, so termination is guaranteed
// and every verdict is exact. Intended for small instances only (qualification
// solves, polytope membership, convex-envelope evaluations).
struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded };
    Status status = Status::Infeasible;
    Rat objective; // valid when Optimal
    RatVec solution; // size n, valid when Optimal
    // Farkas certificate when Infeasible: y with y^T A <= 0 (componentwise over
    // columns) and y^T b > 0. Verified by substitution before returning.
    RatVec farkas;
};

LpResult solve_eq_lp(const std::vector<RatVec>& rows, const RatVec& b, const RatVec& c,
                     std::size_t pivot_cap = 100000);

// Phase-1 only: is {x >= 0 : A x = b} nonempty?
LpResult lp_feasible(const std::vector<RatVec>& rows, const RatVec& b,
                     std::size_t pivot_cap = 100000);

} // namespace cav
