#pragma once

#include <map>
#include <optional>

#include "cav/conjugate.hpp"
#include "cav/gridfn.hpp"
#include "cav/linmap.hpp"
#include "cav/qualif.hpp"

namespace cav {

// Data for the first four-block inf-convolution:
//   h(x,u) = inf over v of f(x, u - Bv) + g(Ax, v),  A : X -> Y,  B : V -> U,
// with f on the X x U product grid and g on Y x V, plus dual grids for all
// four blocks.
struct QuadSetup {
    GridFn f;
    GridFn g;
    RatLinMap A;
    RatLinMap B;
    LatticeGrid xg, ug, yg, vg;
    LatticeGrid xs, us, ys, vs;

    QuadSetup(GridFn f_, GridFn g_, RatLinMap A_, RatLinMap B_, LatticeGrid xg_, LatticeGrid ug_,
              LatticeGrid yg_, LatticeGrid vg_, LatticeGrid xs_, LatticeGrid us_, LatticeGrid ys_,
              LatticeGrid vs_);
};

GridFn infconv_t3(const QuadSetup& s);

struct DualMin {
    ExtReal value;
    std::optional<RatVec> witness; // empty when the feasible set is empty / value +inf
};

// min over the Y* grid of f*(x0* - A^T y*, u0*) + g*(y*, B^T u0*), ties broken
// toward the lexicographically smallest y*.
DualMin t3_dual_min(const QuadSetup& s, const GridFn& fstar, const GridFn& gstar,
                    const RatVec& x0s, const RatVec& u0s);

struct QcCheck {
    QCResult qc;
    std::vector<RatVec> difference_set; // raw differences before ray normalization
    bool domains_intersect = false;
};
QcCheck check_qc_t3(const QuadSetup& s);

struct DualityReport {
    GridFn lhs; // h* on the X* x U* grid
    GridFn rhs; // pointwise dual minimum
    std::vector<std::optional<RatVec>> witnesses;
    ExtReal max_gap;
    std::size_t worst_index = 0;
    bool weak_ok = false;
    QCResult qualification;
    bool domains_intersect = false;
    bool convex_closed = false;
    double tolerance = 0.0;
    bool applicable = false; // qualification holds and inputs convex-closed
    bool strong_ok = false;  // max_gap <= tolerance
};

// tol < 0 selects the instance-derived tolerance (L_f + L_g + 1) * max step.
// convex_closed, when provided, is trusted; otherwise decided via closure().
DualityReport verify_t3(const QuadSetup& s, double tol = -1.0,
                        std::optional<bool> convex_closed = std::nullopt);

double instance_tolerance_t3(const QuadSetup& s);

// Second four-block form: h(x,u) = inf{ k(Cx,t) : Dt = u } with k on the
// W x T product grid.
struct Quad21Setup {
    GridFn k;
    int dw; // axes of the W block within k's grid
    RatLinMap C; // X -> W
    RatLinMap D; // T -> U
    LatticeGrid xg, ug;
    LatticeGrid xs, us, ws, ts;

    Quad21Setup(GridFn k_, int dw_, RatLinMap C_, RatLinMap D_, LatticeGrid xg_, LatticeGrid ug_,
                LatticeGrid xs_, LatticeGrid us_, LatticeGrid ws_, LatticeGrid ts_);
};

GridFn infconv_t21(const GridFn& k, int dw, const RatLinMap& C, const RatLinMap& D,
                   const LatticeGrid& xg, const LatticeGrid& ug);

// min{ k*(w*, D^T u0*) : w* on the W* grid, C^T w* = x0* } (exact constraint).
DualMin t21_dual_min(const GridFn& kstar, int dws, const RatLinMap& C, const RatLinMap& D,
                     const RatVec& x0s, const RatVec& u0s);

QcCheck check_qc_t21(const Quad21Setup& s);
DualityReport verify_t21(const Quad21Setup& s, double tol = -1.0,
                         std::optional<bool> convex_closed = std::nullopt);
double instance_tolerance_t21(const Quad21Setup& s);

// Remark-style reduction of a Theorem 3 setup to a Theorem 21 one:
// k((x,y),(u,v)) = f(x,u) + g(y,v), Cx = (x, Ax), D(u,v) = u + Bv.
struct Lift {
    GridFn k;
    RatLinMap C, D;
    LatticeGrid wg, tg;
    int dw;
};
Lift remark22_lift(const QuadSetup& s, std::size_t max_cells = std::size_t{1} << 22);

// Dual-side lift: k*((x*,y*),(u*,v*)) = f*(x*,u*) + g*(y*,v*) assembled from
// the block conjugates so both dual-minimum paths share their term values.
GridFn lift_dual(const QuadSetup& s, const GridFn& fstar, const GridFn& gstar);

// Exact set identity behind both inf-convolution proofs: with Q(x,y) = y - Rx,
//   {(x - x1, y - R x1)} over G and lattice x1  ==  Q^{-1}[Q(G)],
// both sides intersected with a finite box.
struct Lemma2Result {
    std::vector<RatVec> lhs, rhs;
    bool equal = false;
};
Lemma2Result lemma2_sets(const std::vector<RatVec>& G, const RatLinMap& R, const LatticeGrid& box,
                         std::size_t cap = std::size_t{1} << 22);

} // namespace cav
