#include "cav/monops.hpp"

#include <map>

#include "cav/conjugate.hpp"
#include "cav/errors.hpp"
#include "cav/quadab.hpp"

namespace cav {

MonotoneCheck is_monotone(const OperatorGraph& S) {
    MonotoneCheck res;
    for (std::size_t i = 0; i < S.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < S.pairs.size(); ++j) {
            if (dot(vec_sub(S.pairs[i].first, S.pairs[j].first),
                    vec_sub(S.pairs[i].second, S.pairs[j].second)) < 0) {
                res.monotone = false;
                res.violating = {i, j};
                return res;
            }
        }
    return res;
}

OperatorGraph op_inverse(const OperatorGraph& S) {
    std::vector<std::pair<RatVec, RatVec>> pairs;
    pairs.reserve(S.pairs.size());
    for (const auto& [x, xs] : S.pairs) pairs.emplace_back(xs, x);
    return OperatorGraph::from_pairs(S.dim, std::move(pairs));
}

OperatorGraph op_sum(const OperatorGraph& S, const OperatorGraph& T) {
    if (S.dim != T.dim) throw DimensionError("op_sum: dimension mismatch");
    std::map<RatVec, std::vector<const RatVec*>, bool (*)(const RatVec&, const RatVec&)> tx(
        &lex_less);
    for (const auto& [x, xs] : T.pairs) tx[x].push_back(&xs);
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (const auto& [x, xs] : S.pairs) {
        auto it = tx.find(x);
        if (it == tx.end()) continue;
        for (const RatVec* t : it->second) pairs.emplace_back(x, vec_add(xs, *t));
    }
    return OperatorGraph::from_pairs(S.dim, std::move(pairs));
}

OperatorGraph op_parallel(const OperatorGraph& S, const OperatorGraph& T) {
    if (S.dim != T.dim) throw DimensionError("op_parallel: dimension mismatch");
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (const auto& [a, p] : S.pairs)
        for (const auto& [v, q] : T.pairs)
            if (p == q) pairs.emplace_back(vec_add(a, v), p);
    return OperatorGraph::from_pairs(S.dim, std::move(pairs));
}

OperatorGraph conj_transform(const OperatorGraph& G, const RatLinMap& A,
                             const LatticeGrid& xgrid) {
    if (A.rows() != G.dim) throw DimensionError("conj_transform: A range dim mismatch");
    if (A.cols() != xgrid.dim()) throw DimensionError("conj_transform: A source dim mismatch");
    RatLinMap At = A.transpose();
    std::map<RatVec, std::vector<const RatVec*>, bool (*)(const RatVec&, const RatVec&)> gx(
        &lex_less);
    for (const auto& [z, w] : G.pairs) gx[z].push_back(&w);
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (std::size_t i = 0; i < xgrid.size(); ++i) {
        RatVec x = xgrid.point(i);
        auto it = gx.find(A.apply(x));
        if (it == gx.end()) continue;
        for (const RatVec* w : it->second) pairs.emplace_back(x, At.apply(*w));
    }
    return OperatorGraph::from_pairs(xgrid.dim(), std::move(pairs));
}

OperatorGraph op_algebra(const OperatorGraph& S, const OperatorGraph* T, OpMode mode,
                         const RatLinMap* A, const LatticeGrid* xgrid) {
    switch (mode) {
    case OpMode::Inverse:
        return op_inverse(S);
    case OpMode::Sum:
        if (!T) throw ValidationError("op_algebra: sum needs two graphs");
        return op_sum(S, *T);
    case OpMode::Parallel:
        if (!T) throw ValidationError("op_algebra: parallel needs two graphs");
        return op_parallel(S, *T);
    case OpMode::ConjTransform:
        if (!A || !xgrid) throw ValidationError("op_algebra: conj_transform needs a map and grid");
        return conj_transform(S, *A, *xgrid);
    }
    throw ValidationError("op_algebra: unknown mode");
}

CcInstance CcInstance::star(RatVec y, Polytope C_in_dual) {
    return CcInstance{Kind::Star, std::move(y), {}, std::move(C_in_dual)};
}

CcInstance CcInstance::space(Polytope C_in_primal, RatVec ystar) {
    return CcInstance{Kind::Space, {}, std::move(ystar), std::move(C_in_primal)};
}

CcVerdict cc_check(const OperatorGraph& S, const CcInstance& inst) {
    CcVerdict v;
    if (inst.kind == CcInstance::Kind::Star) {
        v.hypothesis_holds = true;
        for (const auto& [s, sstar] : S.pairs) {
            RatVec d = vec_sub(s, inst.y);
            // exists y* in C with <s - y, s* - y*> >= 0, via the vertex min
            if (dot(d, sstar) - inst.C.min_pairing(d) < 0) {
                v.hypothesis_holds = false;
                break;
            }
        }
        v.conclusion_holds = false;
        for (const auto& [s, sstar] : S.pairs)
            if (s == inst.y && inst.C.contains(sstar)) {
                v.conclusion_holds = true;
                break;
            }
    } else {
        v.hypothesis_holds = true;
        for (const auto& [s, sstar] : S.pairs) {
            RatVec d = vec_sub(sstar, inst.ystar);
            if (dot(s, d) - inst.C.min_pairing(d) < 0) {
                v.hypothesis_holds = false;
                break;
            }
        }
        v.conclusion_holds = false;
        for (const auto& [s, sstar] : S.pairs)
            if (sstar == inst.ystar && inst.C.contains(s)) {
                v.conclusion_holds = true;
                break;
            }
    }
    return v;
}

MaximalityResult grid_maximal(const OperatorGraph& S, const LatticeGrid& eg,
                              const LatticeGrid& esg) {
    MaximalityResult res;
    for (std::size_t ie = 0; ie < eg.size(); ++ie) {
        RatVec x = eg.point(ie);
        for (std::size_t is = 0; is < esg.size(); ++is) {
            RatVec xs = esg.point(is);
            bool present = false, compatible = true;
            for (const auto& [s, sstar] : S.pairs) {
                if (s == x && sstar == xs) {
                    present = true;
                    break;
                }
                if (dot(vec_sub(x, s), vec_sub(xs, sstar)) < 0) {
                    compatible = false;
                    break;
                }
            }
            if (!present && compatible) {
                res.maximal = false;
                res.addable = {x, xs};
                return res;
            }
        }
    }
    return res;
}

HarnessReport theorem11_harness(const OperatorGraph& S, const std::vector<CcInstance>& instances,
                                const LatticeGrid& eg, const LatticeGrid& esg,
                                const MaximalityOracle& oracle) {
    MaximalityOracle oq = oracle;
    if (!oq) oq = [&](const OperatorGraph& T) { return grid_maximal(T, eg, esg); };

    HarnessReport rep;
    for (const auto& inst : instances) {
        InstanceVerdict iv;
        OperatorGraph composed{S.dim, {}};
        if (inst.kind == CcInstance::Kind::Star) {
            // K := -C, compose with M_{y,K} from the Example 7 family.
            ReprFn g7 = ReprFn::example7(inst.y, inst.C.negated(), eg, esg);
            composed = op_sum(S, graph_of(g7));
        } else {
            ReprFn h6 = ReprFn::example6(inst.C.negated(), inst.ystar, eg, esg);
            composed = op_parallel(S, graph_of(h6));
        }
        MaximalityResult mr = oq(composed);
        iv.composed_maximal = mr.maximal;
        if (!mr.maximal) {
            iv.outcome = InstanceVerdict::Outcome::Skipped;
            iv.note = "composed operator not grid-maximal; hypothesis unmet";
        } else {
            iv.cc = cc_check(S, inst);
            if (!iv.cc.hypothesis_holds)
                iv.outcome = InstanceVerdict::Outcome::Vacuous;
            else if (iv.cc.conclusion_holds)
                iv.outcome = InstanceVerdict::Outcome::Ok;
            else {
                iv.outcome = InstanceVerdict::Outcome::Counterexample;
                rep.counterexample_free = false;
            }
        }
        rep.instances.push_back(std::move(iv));
    }
    return rep;
}

namespace {

// Range of M g* must be representable on g's primal grid for variant c.
bool range_on_grid(const OperatorGraph& mgstar, const LatticeGrid& fg) {
    for (const auto& p : mgstar.range())
        if (!fg.flat_index(p)) return false;
    return true;
}

// The composed graphs can step outside the sampling window (sums of dual
// values, boundary normal fans); equality against the extracted graph is
// asserted on the representable pairs.
OperatorGraph restrict_to_window(const OperatorGraph& g, const LatticeGrid& eg,
                                 const LatticeGrid& esg) {
    std::vector<std::pair<RatVec, RatVec>> keep;
    for (const auto& p : g.pairs)
        if (eg.flat_index(p.first) && esg.flat_index(p.second)) keep.push_back(p);
    return OperatorGraph::from_pairs(g.dim, std::move(keep));
}

} // namespace

T15Report theorem15_verify(const ReprFn& f, const ReprFn& g, const RatLinMap& map, char variant,
                           double tol) {
    T15Report rep;
    const int de = f.egrid().dim();

    if (variant == 'a') {
        if (map.rows() != g.egrid().dim() || map.cols() != de)
            throw DimensionError("theorem15_verify(a): A must map E into F");
        QuadSetup setup(f.sample(), g.sample(), map, map.transpose(), f.egrid(), f.esgrid(),
                        g.egrid(), g.esgrid(), f.esgrid(), f.egrid(), g.esgrid(), g.egrid());
        QcCheck qc = check_qc_t3(setup);
        rep.qualification = qc.qc;
        rep.applicable = qc.qc.is_subspace;
        if (!rep.applicable) {
            rep.note = "qualification condition fails; theorem inapplicable";
            rep.ok = true;
            return rep;
        }
        GridFn h = infconv_t3(setup);
        GridFn hbar = closure(h);
        ReprFn hrep = ReprFn::sampled_closed(hbar, de);
        rep.extracted = graph_of(hrep, tol);
        rep.combinatorial = restrict_to_window(
            op_sum(graph_of(f), conj_transform(graph_of(g), map, f.egrid())), f.egrid(),
            f.esgrid());
        rep.graphs_equal = rep.extracted == rep.combinatorial;
        rep.strongly_repr = is_strongly_representative(hrep, tol >= 0 ? tol : 1e-12).ok;
        rep.ok = rep.graphs_equal && rep.strongly_repr;
        return rep;
    }

    if (variant != 'b' && variant != 'c') throw ValidationError("theorem15_verify: variant a|b|c");
    if (map.rows() != de || map.cols() != g.egrid().dim())
        throw DimensionError("theorem15_verify(b/c): B must map F into E");
    RatLinMap Bt = map.transpose();

    // Theorem 3 roles after swapping both blocks: X = E*, U = E, Y = F*, V = F.
    QuadSetup setup(swap_blocks(f.sample(), de), swap_blocks(g.sample(), g.egrid().dim()), Bt, map,
                    f.esgrid(), f.egrid(), g.esgrid(), g.egrid(), f.egrid(), f.esgrid(), g.egrid(),
                    g.esgrid());
    QcCheck qc = check_qc_t3(setup);
    rep.qualification = qc.qc;
    rep.applicable = qc.qc.is_subspace;

    OperatorGraph mgstar = op_inverse(graph_of_at(g, tol));
    if (variant == 'c' && !range_on_grid(mgstar, g.egrid())) {
        rep.applicable = false;
        rep.note = "range of M g* leaves the F grid; variant c inapplicable";
    }
    if (!rep.applicable) {
        if (rep.note.empty()) rep.note = "qualification condition fails; theorem inapplicable";
        rep.ok = true;
        return rep;
    }

    GridFn h3 = infconv_t3(setup);
    GridFn hbar = closure(swap_blocks(h3, de));
    ReprFn hrep = ReprFn::sampled_closed(hbar, de);
    rep.extracted = graph_of(hrep, tol);

    if (variant == 'b') {
        OperatorGraph mfstar = op_inverse(graph_of_at(f, tol));
        rep.combinatorial =
            op_inverse(op_sum(mfstar, conj_transform(mgstar, Bt, f.esgrid())));
    } else {
        rep.combinatorial = op_inverse(
            op_sum(op_inverse(graph_of(f, tol)),
                   conj_transform(op_inverse(graph_of(g, tol)), Bt, f.esgrid())));
    }
    rep.combinatorial = restrict_to_window(rep.combinatorial, f.egrid(), f.esgrid());
    rep.graphs_equal = rep.extracted == rep.combinatorial;
    rep.strongly_repr = is_strongly_representative(hrep, tol >= 0 ? tol : 1e-12).ok;
    rep.ok = rep.graphs_equal && rep.strongly_repr;
    return rep;
}

HarnessReport theorem17_harness(const ReprFn& f, const std::vector<CcInstance>& instances) {
    OperatorGraph S = graph_of(f);
    HarnessReport rep;
    for (const auto& inst : instances) {
        InstanceVerdict iv;
        OperatorGraph composed{S.dim, {}};
        if (inst.kind == CcInstance::Kind::Star) {
            ReprFn g7 = ReprFn::example7(inst.y, inst.C.negated(), f.egrid(), f.esgrid());
            composed = op_sum(S, graph_of(g7));
        } else {
            ReprFn h6 = ReprFn::example6(inst.C.negated(), inst.ystar, f.egrid(), f.esgrid());
            composed = op_parallel(S, graph_of(h6));
        }
        iv.composed_maximal = grid_maximal(composed, f.egrid(), f.esgrid()).maximal;
        iv.cc = cc_check(S, inst);
        if (!iv.cc.hypothesis_holds)
            iv.outcome = InstanceVerdict::Outcome::Vacuous;
        else if (iv.cc.conclusion_holds)
            iv.outcome = InstanceVerdict::Outcome::Ok;
        else {
            iv.outcome = InstanceVerdict::Outcome::Counterexample;
            rep.counterexample_free = false;
        }
        rep.instances.push_back(std::move(iv));
    }
    return rep;
}

} // namespace cav
