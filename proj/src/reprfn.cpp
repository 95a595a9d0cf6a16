#include "cav/reprfn.hpp"

#include <cfloat>
#include <cmath>

#include "cav/conjugate.hpp"
#include "cav/errors.hpp"

namespace cav {

namespace {

double auto_point_tol(double val, double pair) {
    return 4.0 * DBL_EPSILON * std::max({1.0, std::fabs(val), std::fabs(pair)});
}

} // namespace

ReprFn::ReprFn(ReprKind k, LatticeGrid eg, LatticeGrid esg)
    : kind_(k), eg_(std::move(eg)), esg_(std::move(esg)) {
    if (eg_.dim() != esg_.dim()) throw DimensionError("ReprFn: E and E* grids must share dim");
}

ReprFn ReprFn::sampled(GridFn f, int de) {
    if (de <= 0 || de * 2 != f.grid().dim())
        throw DimensionError("ReprFn::sampled: grid must be an E x E* product");
    ReprFn r(ReprKind::Sampled, block_grid(f.grid(), 0, de), block_grid(f.grid(), de, de));
    r.sampled_ = std::move(f);
    return r;
}

ReprFn ReprFn::sampled_closed(GridFn f, int de) {
    ReprFn r = sampled(std::move(f), de);
    r.known_closed_ = true;
    return r;
}

ReprFn ReprFn::example6(Polytope K, RatVec ystar, LatticeGrid eg, LatticeGrid esg) {
    if (K.dim() != eg.dim()) throw DimensionError("example6: K must live in E");
    if (static_cast<int>(ystar.size()) != esg.dim())
        throw DimensionError("example6: y* must live in E*");
    ReprFn r(ReprKind::Example6, std::move(eg), std::move(esg));
    r.K_ = std::move(K);
    r.anchor_ = std::move(ystar);
    return r;
}

ReprFn ReprFn::example7(RatVec y, Polytope K, LatticeGrid eg, LatticeGrid esg) {
    if (K.dim() != esg.dim()) throw DimensionError("example7: K must live in E*");
    if (static_cast<int>(y.size()) != eg.dim()) throw DimensionError("example7: y must live in E");
    ReprFn r(ReprKind::Example7, std::move(eg), std::move(esg));
    r.K_ = std::move(K);
    r.anchor_ = std::move(y);
    return r;
}

ReprFn ReprFn::separable(const GridFn& phi, const LatticeGrid& esg) {
    if (phi.grid().dim() != esg.dim()) throw DimensionError("separable: phi/esg dim mismatch");
    if (!closure(phi).same_values(phi))
        throw NonConvexError("separable: phi is not convex-closed on its grid");
    ReprFn r(ReprKind::Separable, phi.grid(), esg);
    r.phi_ = phi;
    r.phistar_ = conjugate_fast(phi, esg);
    return r;
}

const Polytope& ReprFn::polytope() const {
    if (!K_) throw Error("ReprFn: no polytope for this kind");
    return *K_;
}

const RatVec& ReprFn::anchor() const {
    if (!closed_form()) throw Error("ReprFn: no anchor for this kind");
    return anchor_;
}

std::optional<Rat> ReprFn::exact_value(const RatVec& x, const RatVec& xs) const {
    if (kind_ == ReprKind::Example6) {
        if (!K_->contains(x)) return std::nullopt;
        return dot(x, anchor_) + K_->support(vec_sub(xs, anchor_));
    }
    if (kind_ == ReprKind::Example7) {
        if (!K_->contains(xs)) return std::nullopt;
        return K_->support(vec_sub(x, anchor_)) + dot(anchor_, xs);
    }
    throw Error("ReprFn::exact_value: not a closed-form kind");
}

std::optional<Rat> ReprFn::exact_conj_value(const RatVec& xs, const RatVec& xss) const {
    if (kind_ == ReprKind::Example6) {
        // h*(x*,x**) = sup<K, x* - y*> + I_K(x**) + <y*, x**>
        if (!K_->contains(xss)) return std::nullopt;
        return K_->support(vec_sub(xs, anchor_)) + dot(anchor_, xss);
    }
    if (kind_ == ReprKind::Example7) {
        // g*(x*,x**) = I_K(x*) + <y, x*> + sup<K, x** - y>
        if (!K_->contains(xs)) return std::nullopt;
        return dot(anchor_, xs) + K_->support(vec_sub(xss, anchor_));
    }
    throw Error("ReprFn::exact_conj_value: not a closed-form kind");
}

ExtReal ReprFn::value(const RatVec& x, const RatVec& xs) const {
    switch (kind_) {
    case ReprKind::Sampled:
        return sampled_->eval_ext(concat(x, xs));
    case ReprKind::Separable:
        return phi_->eval_ext(x) + phistar_->eval_ext(xs);
    default: {
        auto v = exact_value(x, xs);
        return v ? ExtReal::finite(to_double(*v)) : ExtReal::infinity();
    }
    }
}

ExtReal ReprFn::conj_value(const RatVec& xs, const RatVec& xss) const {
    switch (kind_) {
    case ReprKind::Sampled:
        return sample_conj().eval_ext(concat(xs, xss));
    case ReprKind::Separable:
        // (phi ⊕ phi*)* = phi* ⊕ phi** and phi** = phi on the grid.
        return phistar_->eval_ext(xs) + phi_->eval_ext(xss);
    default: {
        auto v = exact_conj_value(xs, xss);
        return v ? ExtReal::finite(to_double(*v)) : ExtReal::infinity();
    }
    }
}

GridFn ReprFn::sample() const {
    if (kind_ == ReprKind::Sampled) return *sampled_;
    LatticeGrid pg = product(eg_, esg_);
    std::vector<ExtReal> vals(pg.size());
    const std::size_t ns = esg_.size();
    for (std::size_t ie = 0; ie < eg_.size(); ++ie) {
        RatVec x = eg_.point(ie);
        for (std::size_t is = 0; is < ns; ++is) vals[ie * ns + is] = value(x, esg_.point(is));
    }
    return GridFn(pg, std::move(vals), "reprfn");
}

GridFn ReprFn::sample_conj() const {
    if (kind_ == ReprKind::Sampled) {
        if (!conj_cache_) conj_cache_ = conjugate_fast(*sampled_, product(esg_, eg_));
        return *conj_cache_;
    }
    LatticeGrid cg = product(esg_, eg_);
    std::vector<ExtReal> vals(cg.size());
    const std::size_t ne = eg_.size();
    for (std::size_t is = 0; is < esg_.size(); ++is) {
        RatVec xs = esg_.point(is);
        for (std::size_t ie = 0; ie < ne; ++ie) vals[is * ne + ie] = conj_value(xs, eg_.point(ie));
    }
    return GridFn(cg, std::move(vals), "reprfn*");
}

ReprCheck is_representative(const ReprFn& f, double tol) {
    ReprCheck res;
    res.ok = true;
    const LatticeGrid& eg = f.egrid();
    const LatticeGrid& esg = f.esgrid();

    auto record = [&](const RatVec& x, const RatVec& xs, double viol) {
        if (!res.worst || viol > res.worst->violation) res.worst = WorstPoint{x, xs, viol};
        res.ok = false;
    };

    for (std::size_t ie = 0; ie < eg.size(); ++ie) {
        RatVec x = eg.point(ie);
        for (std::size_t is = 0; is < esg.size(); ++is) {
            RatVec xs = esg.point(is);
            Rat pair = dot(x, xs);
            if (f.closed_form()) {
                auto v = f.exact_value(x, xs);
                if (v && *v < pair) record(x, xs, to_double(pair - *v));
            } else {
                ExtReal v = f.value(x, xs);
                double pd = to_double(pair);
                if (v.is_finite() && v.value() < pd - tol) record(x, xs, pd - v.value());
            }
        }
    }

    if (f.kind() == ReprKind::Sampled && !f.known_closed()) {
        GridFn s = f.sample();
        GridFn cl = closure(s);
        for (std::size_t i = 0; i < s.grid().size(); ++i) {
            ExtReal a = s.at(i), b = cl.at(i);
            if (a == b) continue;
            double viol = (a.is_finite() && b.is_finite())
                              ? std::fabs(a.value() - b.value())
                              : std::numeric_limits<double>::infinity();
            if (viol > tol) {
                auto [x, xs] = split_point(s.grid().point(i), eg.dim());
                record(x, xs, viol);
            }
        }
    }
    return res;
}

ReprCheck is_strongly_representative(const ReprFn& f, double tol) {
    ReprCheck pre = is_representative(f, tol);
    if (!pre.ok) return pre;

    if (f.kind() == ReprKind::Sampled) {
        // The dual product grid must bracket the achieved slopes or the
        // conjugate samples would miss support behaviour.
        GridFn s = f.sample();
        SlopeBounds sb = slope_bounds(s);
        LatticeGrid dualg = product(f.esgrid(), f.egrid());
        for (int a = 0; a < s.grid().dim(); ++a) {
            double lo = to_double(dualg.coord(a, dualg.extent()[a].lo));
            double hi = to_double(dualg.coord(a, dualg.extent()[a].hi));
            if (sb.lo[a] < lo || sb.hi[a] > hi)
                throw SlopeRangeError("is_strongly_representative: dual grid too narrow on axis " +
                                          std::to_string(a),
                                      sb.lo[a] < lo ? sb.lo[a] : sb.hi[a]);
        }
    }

    ReprCheck res;
    res.ok = true;
    auto record = [&](const RatVec& xs, const RatVec& xss, double viol) {
        if (!res.worst || viol > res.worst->violation) res.worst = WorstPoint{xss, xs, viol};
        res.ok = false;
    };
    const LatticeGrid& eg = f.egrid();
    const LatticeGrid& esg = f.esgrid();
    for (std::size_t is = 0; is < esg.size(); ++is) {
        RatVec xs = esg.point(is);
        for (std::size_t ie = 0; ie < eg.size(); ++ie) {
            RatVec xss = eg.point(ie);
            Rat pair = dot(xs, xss);
            if (f.closed_form()) {
                auto v = f.exact_conj_value(xs, xss);
                if (v && *v < pair) record(xs, xss, to_double(pair - *v));
            } else {
                ExtReal v = f.conj_value(xs, xss);
                double pd = to_double(pair);
                if (v.is_finite() && v.value() < pd - tol) record(xs, xss, pd - v.value());
            }
        }
    }
    return res;
}

AtTransform at_transform(const ReprFn& f) {
    const LatticeGrid& eg = f.egrid();
    const LatticeGrid& esg = f.esgrid();
    LatticeGrid pg = product(eg, esg);
    std::vector<ExtReal> vals(pg.size());
    const std::size_t ns = esg.size();
    for (std::size_t ie = 0; ie < eg.size(); ++ie) {
        RatVec x = eg.point(ie);
        for (std::size_t is = 0; is < ns; ++is) vals[ie * ns + is] = f.conj_value(esg.point(is), x);
    }
    return AtTransform{GridFn(pg, std::move(vals), "at_transform")};
}

namespace {

OperatorGraph equality_graph(const ReprFn& f, double tol, bool use_at) {
    const LatticeGrid& eg = f.egrid();
    const LatticeGrid& esg = f.esgrid();
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (std::size_t ie = 0; ie < eg.size(); ++ie) {
        RatVec x = eg.point(ie);
        for (std::size_t is = 0; is < esg.size(); ++is) {
            RatVec xs = esg.point(is);
            Rat pair = dot(x, xs);
            if (f.closed_form()) {
                auto v = use_at ? f.exact_conj_value(xs, x) : f.exact_value(x, xs);
                if (v && *v == pair) pairs.emplace_back(x, xs);
            } else {
                ExtReal v = use_at ? f.conj_value(xs, x) : f.value(x, xs);
                if (!v.is_finite()) continue;
                double pd = to_double(pair);
                double t = tol >= 0 ? tol : auto_point_tol(v.value(), pd);
                if (v.value() - pd <= t && pd - v.value() <= t) pairs.emplace_back(x, xs);
            }
        }
    }
    return OperatorGraph::from_pairs(eg.dim(), std::move(pairs));
}

} // namespace

OperatorGraph graph_of(const ReprFn& f, double tol) { return equality_graph(f, tol, false); }

OperatorGraph graph_of_at(const ReprFn& f, double tol) { return equality_graph(f, tol, true); }

bool lemma14_check(const ReprFn& f, double tol) { return graph_of(f, tol) == graph_of_at(f, tol); }

bool property61(const ReprFn& ex6) {
    if (ex6.kind() != ReprKind::Example6) throw Error("property61: needs an Example 6 instance");
    const Polytope& K = ex6.polytope();
    const RatVec& ystar = ex6.anchor();
    OperatorGraph g = graph_of(ex6);
    for (const auto& [v, sstar] : g.pairs) {
        if (!K.contains(v)) return false;
        RatVec d = vec_sub(sstar, ystar);
        for (const auto& u : K.vertices())
            if (dot(vec_sub(v, u), d) < 0) return false;
    }
    return true;
}

bool property71(const ReprFn& ex7) {
    if (ex7.kind() != ReprKind::Example7) throw Error("property71: needs an Example 7 instance");
    const Polytope& K = ex7.polytope();
    const RatVec& y = ex7.anchor();
    OperatorGraph g = graph_of(ex7);
    for (const auto& [s, wstar] : g.pairs) {
        if (!K.contains(wstar)) return false;
        RatVec d = vec_sub(s, y);
        for (const auto& vstar : K.vertices())
            if (dot(d, vec_sub(wstar, vstar)) < 0) return false;
    }
    return true;
}

BrResult br_check(const ReprFn& f, double alpha, double beta, const RatVec& x, const RatVec& xs,
                  double tol) {
    if (alpha <= 0 || beta <= 0) throw ValidationError("br_check: alpha, beta must be positive");
    BrResult res;

    Rat pair = dot(x, xs);
    bool hyp;
    double fval;
    if (f.closed_form()) {
        auto v = f.exact_value(x, xs);
        hyp = v && (*v < pair + rat_of(alpha) * rat_of(beta));
        res.gap = v ? to_double(*v - pair) : std::numeric_limits<double>::infinity();
    } else {
        ExtReal v = f.value(x, xs);
        fval = v.as_double();
        hyp = v.is_finite() && fval < to_double(pair) + alpha * beta;
        res.gap = v.is_finite() ? fval - to_double(pair)
                                : std::numeric_limits<double>::infinity();
    }
    if (!hyp) {
        res.status = BrResult::Status::Vacuous;
        return res;
    }

    OperatorGraph g = graph_of(f, tol);
    Rat a2 = rat_of(alpha) * rat_of(alpha);
    Rat b2 = rat_of(beta) * rat_of(beta);
    double delta = std::max(grid_max_step(f.egrid()), grid_max_step(f.esgrid()));
    Rat an2 = rat_of(alpha + delta) * rat_of(alpha + delta);
    Rat bn2 = rat_of(beta + delta) * rat_of(beta + delta);

    auto dist2 = [](const RatVec& a, const RatVec& b) {
        Rat s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            Rat d = a[i] - b[i];
            s += d * d;
        }
        return s;
    };

    std::optional<std::pair<RatVec, RatVec>> near;
    for (const auto& p : g.pairs) {
        Rat dx = dist2(p.first, x), ds = dist2(p.second, xs);
        if (dx < a2 && ds < b2) {
            res.status = BrResult::Status::Witness;
            res.witness = p;
            return res;
        }
        if (!near && dx < an2 && ds < bn2) near = p;
    }
    if (near) {
        res.status = BrResult::Status::NearMiss;
        res.witness = near;
    } else {
        res.status = BrResult::Status::Fail;
    }
    return res;
}

} // namespace cav
