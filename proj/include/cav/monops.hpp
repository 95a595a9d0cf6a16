#pragma once

#include <functional>
#include <optional>
#include <string>

#include "cav/linmap.hpp"
#include "cav/opgraph.hpp"
#include "cav/polytope.hpp"
#include "cav/qualif.hpp"
#include "cav/reprfn.hpp"

namespace cav {

struct MonotoneCheck {
    bool monotone = true;
    std::optional<std::pair<std::size_t, std::size_t>> violating; // pair indices
};
// <s - t, s* - t*> >= 0 for all graph pairs, exact.
MonotoneCheck is_monotone(const OperatorGraph& S);

OperatorGraph op_inverse(const OperatorGraph& S);
OperatorGraph op_sum(const OperatorGraph& S, const OperatorGraph& T); // pointwise over shared x
// Parallel sum from the defining form: x* in (S || T)x iff there is v with
// x* in S(x - v) ∩ Tv. The identity with (S^-1 + T^-1)^-1 is a tested
// property, not assumed.
OperatorGraph op_parallel(const OperatorGraph& S, const OperatorGraph& T);
// x -> A^T (G(Ax)): pairs (x, A^T w) over x in xgrid with (Ax, w) in G.
OperatorGraph conj_transform(const OperatorGraph& G, const RatLinMap& A, const LatticeGrid& xgrid);

enum class OpMode { Sum, Parallel, Inverse, ConjTransform };
OperatorGraph op_algebra(const OperatorGraph& S, const OperatorGraph* T, OpMode mode,
                         const RatLinMap* A = nullptr, const LatticeGrid* xgrid = nullptr);

// Test data for the cc-maximality implications: star pairs (y, C ⊂ E*) for
// (9.1) => (9.2), space pairs (C ⊂ E, y*) for (9.3) => (9.4).
struct CcInstance {
    enum class Kind { Star, Space };
    Kind kind;
    RatVec y;     // Star
    RatVec ystar; // Space
    Polytope C;

    static CcInstance star(RatVec y, Polytope C_in_dual);
    static CcInstance space(Polytope C_in_primal, RatVec ystar);
};

struct CcVerdict {
    bool hypothesis_holds = false;
    bool conclusion_holds = false;
};
CcVerdict cc_check(const OperatorGraph& S, const CcInstance& inst);

// Discrete maximality surrogate: no lattice point within the window can be
// added while preserving monotonicity.
struct MaximalityResult {
    bool maximal = true;
    std::optional<std::pair<RatVec, RatVec>> addable;
};
MaximalityResult grid_maximal(const OperatorGraph& S, const LatticeGrid& eg,
                              const LatticeGrid& esg);

using MaximalityOracle = std::function<MaximalityResult(const OperatorGraph&)>;

struct InstanceVerdict {
    enum class Outcome { Ok, Vacuous, Skipped, Counterexample };
    Outcome outcome = Outcome::Ok;
    bool composed_maximal = false;
    CcVerdict cc;
    std::string note;
};

struct HarnessReport {
    std::vector<InstanceVerdict> instances;
    bool counterexample_free = true;
};

// For each instance, composes S with the matching closed-form multifunction
// (sum with M_{y,K} on star instances, parallel sum with N_{K,y*} on space
// instances, K = -C), asks the oracle whether the composition is maximal on
// the window, and where it is, asserts the cc implication.
HarnessReport theorem11_harness(const OperatorGraph& S, const std::vector<CcInstance>& instances,
                                const LatticeGrid& eg, const LatticeGrid& esg,
                                const MaximalityOracle& oracle = nullptr);

struct T15Report {
    bool applicable = false; // qualification holds (plus range condition for c)
    QCResult qualification;
    bool graphs_equal = false;
    bool strongly_repr = false;
    bool ok = false; // applicable => both assertions hold
    OperatorGraph combinatorial{0, {}};
    OperatorGraph extracted{0, {}};
    std::string note;
};

// variant 'a': M f + A^T (M g) A via the Theorem-8(a) inf-convolution.
// variant 'b': x -> ((M f*) + B (M g*) B^T)^{-1} x via Theorem 8(b).
// variant 'c': ((M f)^-1 + B (M g)^-1 B^T)^-1, requiring the range of M g*
//              to live on g's primal grid.
// For 'b' and 'c' the map argument is B in L(F, E).
T15Report theorem15_verify(const ReprFn& f, const ReprFn& g, const RatLinMap& map, char variant,
                           double tol = -1.0);

HarnessReport theorem17_harness(const ReprFn& f, const std::vector<CcInstance>& instances);

} // namespace cav
