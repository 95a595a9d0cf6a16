#pragma once

#include <optional>

#include "cav/gridfn.hpp"
#include "cav/rational.hpp"

namespace cav {

// Declares which dual grid pairs with which primal grid under the standard
// inner product.
struct DualPairing {
    LatticeGrid primal;
    LatticeGrid dual;
    DualPairing(LatticeGrid p, LatticeGrid d) : primal(std::move(p)), dual(std::move(d)) {
        if (primal.dim() != dual.dim()) throw DimensionError("DualPairing: dim mismatch");
    }
};

// f*(s) = max over primal grid points x with f(x) finite of <x,s> - f(x).
//
// Value semantics both implementations share: per pair, the accumulation runs
// right to left over the axes,
//     acc = -f(x);  for j = d-1 .. 0:  acc = (x_j * s_j) + acc,
// each product and sum rounded once. This order lets the per-axis transform
// reproduce the flat maximum bit for bit (max commutes with the monotone
// rounded add of a constant). Requires -ffp-contract=off.
GridFn conjugate(const GridFn& f, const LatticeGrid& dual);

// Axis-by-axis linear-time transform; output is value-identical to conjugate
// on every input. Near-envelope ties are resolved by evaluating every
// candidate whose exact-rational envelope gap is within the rounding margin,
// degenerating to the direct per-point maximum where the geometry is too
// tight to prune.
GridFn conjugate_fast(const GridFn& f, const LatticeGrid& dual);

// Lower convex envelope of the sampled points, evaluated on the same grid
// (equals the biconjugate through an adequate dual grid). Exact rational
// computation, rounded outputs iterated to a hull-stable fixpoint so that
// closure(closure(f)) == closure(f) holds exactly.
GridFn closure(const GridFn& f);

// f** through an explicit dual grid; throws SlopeRangeError when the dual
// grid's coordinate range does not bracket the achieved difference quotients.
GridFn biconjugate_via(const GridFn& f, const LatticeGrid& dual);

// f(x) + f*(s) - <x,s>; x must lie on f's grid. When a pairing is supplied,
// s must lie on its dual grid.
ExtReal fy_gap(const GridFn& f, const RatVec& x, const RatVec& s);
ExtReal fy_gap(const GridFn& f, const DualPairing& pairing, const RatVec& x, const RatVec& s);

// Achieved per-axis difference quotients between finite samples, for sizing
// dual grids and instance tolerances.
struct SlopeBounds {
    std::vector<double> lo, hi; // per axis; 0 when no finite pair exists
    double max_abs() const;
};
SlopeBounds slope_bounds(const GridFn& f);

// max(|coords|) helper used in tolerance derivations.
double grid_max_step(const LatticeGrid& g);

} // namespace cav
