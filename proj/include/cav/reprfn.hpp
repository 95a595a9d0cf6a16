#pragma once

#include <optional>

#include "cav/gridfn.hpp"
#include "cav/opgraph.hpp"
#include "cav/polytope.hpp"

namespace cav {

enum class ReprKind { Sampled, Example6, Example7, Separable };

// Candidate representative function on E x E*, either sampled on the product
// grid or one of the closed-form families:
//   Example6:  h(x,x*) = I_K(x) + <x,y*> + sup<K, x* - y*>        (K in E)
//   Example7:  g(x,x*) = sup<x - y, K> + I_K(x*) + <y,x*>         (K in E*)
//   Separable: f(x,x*) = phi(x) + phi*(x*)  (phi convex-closed on its grid)
// Closed forms evaluate exactly from the polytope vertices; their conjugates
// come from the closed-form conjugate expressions, so representativity and
// graph membership are tolerance-free for them. The separable kind keeps its
// conjugate in closed form too (phi* ⊕ phi), but its values carry one rounded
// addition.
class ReprFn {
public:
    static ReprFn sampled(GridFn f, int de);
    // For values already known hull-stable (e.g. closure() output); the
    // closedness sweep in is_representative is skipped.
    static ReprFn sampled_closed(GridFn f, int de);
    static ReprFn example6(Polytope K, RatVec ystar, LatticeGrid eg, LatticeGrid esg);
    static ReprFn example7(RatVec y, Polytope K, LatticeGrid eg, LatticeGrid esg);
    static ReprFn separable(const GridFn& phi, const LatticeGrid& esg);

    ReprKind kind() const { return kind_; }
    const LatticeGrid& egrid() const { return eg_; }
    const LatticeGrid& esgrid() const { return esg_; }
    bool closed_form() const { return kind_ == ReprKind::Example6 || kind_ == ReprKind::Example7; }

    ExtReal value(const RatVec& x, const RatVec& xs) const;
    ExtReal conj_value(const RatVec& xs, const RatVec& xss) const; // f*(x*, x**), x** on E

    // Closed-form kinds only; nullopt encodes +inf.
    std::optional<Rat> exact_value(const RatVec& x, const RatVec& xs) const;
    std::optional<Rat> exact_conj_value(const RatVec& xs, const RatVec& xss) const;

    GridFn sample() const;      // on E ⊗ E*
    GridFn sample_conj() const; // f* on E* ⊗ E

    const Polytope& polytope() const;
    const RatVec& anchor() const; // y* for Example6, y for Example7

private:
    ReprFn(ReprKind k, LatticeGrid eg, LatticeGrid esg);

    ReprKind kind_;
    LatticeGrid eg_, esg_;
    std::optional<GridFn> sampled_;
    std::optional<Polytope> K_;
    RatVec anchor_;
    std::optional<GridFn> phi_, phistar_;
    bool known_closed_ = false;
    mutable std::optional<GridFn> conj_cache_; // sampled kind

public:
    bool known_closed() const { return known_closed_; }
};

struct WorstPoint {
    RatVec x, xs;
    double violation = 0.0;
};

struct ReprCheck {
    bool ok = false;
    std::optional<WorstPoint> worst;
};

// Pairing lower bound at every grid point plus convex-closedness (the latter
// checked against closure() for sampled kinds, structural for the rest).
ReprCheck is_representative(const ReprFn& f, double tol);

// Additionally f*(x*, x**) >= <x*, x**> on the dual product grid. Throws
// SlopeRangeError when a sampled kind's achieved slopes exceed the dual grid.
ReprCheck is_strongly_representative(const ReprFn& f, double tol);

// f^@(x,x*) = f*(x*, x); finite dimension collapses the bidual embedding.
struct AtTransform {
    GridFn values; // on E ⊗ E*
};
AtTransform at_transform(const ReprFn& f);

// Equality set M f = {(x,x*) : f(x,x*) = <x,x*>} over the product grid.
// tol < 0 selects the default: exact for closed forms, 4 eps at the local
// magnitude scale otherwise.
OperatorGraph graph_of(const ReprFn& f, double tol = -1.0);
OperatorGraph graph_of_at(const ReprFn& f, double tol = -1.0); // M f^@

bool lemma14_check(const ReprFn& f, double tol = -1.0); // M f^@ == M f

// Normal-cone-style inequalities of the closed forms, exact full enumerations:
// every (v,s*) in the graph satisfies v in K and <v - u, s* - y*> >= 0 for all
// u in K (Example 6), mirrored for Example 7.
bool property61(const ReprFn& ex6);
bool property71(const ReprFn& ex7);

struct BrResult {
    enum class Status { Witness, NearMiss, Fail, Vacuous };
    Status status = Status::Fail;
    std::optional<std::pair<RatVec, RatVec>> witness;
    double gap = 0.0; // f(x,x*) - <x,x*>
};

// Brondsted-Rockafellar style search: under f(x,x*) < <x,x*> + alpha*beta,
// look for a graph point within the open alpha/beta balls (Euclidean, exact
// comparisons). Near-misses within one grid step are reported distinctly.
BrResult br_check(const ReprFn& f, double alpha, double beta, const RatVec& x, const RatVec& xs,
                  double tol = -1.0);

} // namespace cav
