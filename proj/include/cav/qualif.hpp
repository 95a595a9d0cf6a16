#pragma once

#include <optional>
#include <vector>

#include "cav/gridfn.hpp"
#include "cav/rational.hpp"

namespace cav {

// Verdict for "cone(D) is a (closed) subspace". Finitely generated cones are
// closed, and the cone is a subspace iff -d lies in it for every generator d.
// Both answers carry exact certificates that re-verify by substitution.
struct QCResult {
    std::vector<RatVec> generators;
    bool is_subspace = false;
    std::vector<RatVec> basis; // spanning basis of the cone's span when subspace
    // Per generator j: lambda >= 0 with sum_i lambda_i d_i = -d_j.
    std::vector<RatVec> combos;
    // When not a subspace: the failing generator and a separating functional
    // phi with <phi, d> <= 0 for all generators and <phi, d_fail> < 0.
    std::optional<std::size_t> failing;
    RatVec separating;
};

// Block coordinates of the grid points where f is finite (sorted, unique).
// axes selects the block; see first_axes/last_axes helpers.
std::vector<RatVec> dom_project(const GridFn& f, const std::vector<int>& axes);
std::vector<int> first_axes(int count);
std::vector<int> axes_range(int from, int count);

QCResult cone_is_subspace(const std::vector<RatVec>& D);

// Enforced instance cap for the exact feasibility solves.
constexpr std::size_t kMaxGenerators = 64;
constexpr int kMaxConeDim = 8;

// Rational row space basis.
std::vector<RatVec> span_basis(const std::vector<RatVec>& vecs);
bool in_span(const RatVec& v, const std::vector<RatVec>& basis);
bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b);

// Sandwich criterion: S_inner ⊂ H ⊂ cone(D_outer) verified exactly, then the
// conclusion cone(D_outer) == H asserted via cone_is_subspace + span equality.
struct SandwichResult {
    bool inner_in_H = false;
    bool H_in_cone = false;
    bool hypothesis_ok = false;
    bool conclusion_ok = false;
    bool ok = false; // hypothesis and conclusion
    QCResult qc;
};
SandwichResult sandwich_check(const std::vector<RatVec>& S_inner,
                              const std::vector<RatVec>& H_basis,
                              const std::vector<RatVec>& D_outer);

// Closure-style containment: every inner point within tol (Euclidean) of some
// cover point. Used for the domain/range containments of graph domains.
struct ContainmentResult {
    bool ok = true;
    double worst = 0.0;
    std::optional<RatVec> worst_point;
};
ContainmentResult closure_containment(const std::vector<RatVec>& inner,
                                      const std::vector<RatVec>& cover, double tol);

} // namespace cav
