#include "cav/quadab.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <set>

#include "cav/errors.hpp"

namespace cav {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

// Positive-scale normalization of generators to primitive ray representatives;
// the cone is invariant under it and duplicate rays collapse.
std::vector<RatVec> normalize_rays(const std::vector<RatVec>& D) {
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> rays(&lex_less);
    bool any_zero = false;
    for (const auto& d : D) {
        BigInt lcm = 1;
        bool zero = true;
        for (const auto& c : d) {
            if (c != 0) zero = false;
            lcm = boost::multiprecision::lcm(lcm, denominator(c));
        }
        if (zero) {
            any_zero = true;
            continue;
        }
        BigInt g = 0;
        std::vector<BigInt> ints(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            ints[i] = numerator(d[i]) * (lcm / denominator(d[i]));
            g = boost::multiprecision::gcd(g, abs(ints[i]));
        }
        RatVec r(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) r[i] = Rat(ints[i] / g);
        rays.insert(std::move(r));
    }
    std::vector<RatVec> out(rays.begin(), rays.end());
    if (out.empty() && any_zero && !D.empty()) out.push_back(RatVec(D[0].size(), Rat(0)));
    return out;
}

// Integer shift of a vector in units of a grid's steps, if the vector lies on
// the step lattice.
std::optional<std::vector<long>> step_shift(const RatVec& v, const LatticeGrid& g) {
    std::vector<long> k(v.size());
    for (int a = 0; a < g.dim(); ++a) {
        Rat q = v[a] / g.step()[a];
        if (!is_integer(q)) return std::nullopt;
        k[a] = numerator(q).convert_to<long>();
    }
    return k;
}

double eps_slack(double lhs, double rhs, int nterms) {
    double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
    return 8.0 * DBL_EPSILON * nterms * scale;
}

DualityReport assemble_report(GridFn lhs, GridFn rhs,
                              std::vector<std::optional<RatVec>> witnesses, QcCheck qcres,
                              bool convex_closed, double tolerance, int nterms) {
    DualityReport rep{std::move(lhs), std::move(rhs), std::move(witnesses), ExtReal::finite(0),
                      0,              true,           std::move(qcres.qc),  qcres.domains_intersect,
                      convex_closed,  tolerance,      false,                false};
    double best_gap = -1.0;
    std::size_t best_idx = 0, inf_idx = 0;
    bool any_inf = false;
    for (std::size_t i = 0; i < rep.lhs.grid().size(); ++i) {
        ExtReal l = rep.lhs.at(i), r = rep.rhs.at(i);
        if (!r.is_finite()) {
            if (!any_inf) inf_idx = i;
            any_inf = true;
            continue;
        }
        if (l.value() > r.value() + eps_slack(l.value(), r.value(), nterms)) rep.weak_ok = false;
        double gap = std::max(0.0, r.value() - l.value());
        if (gap > best_gap) {
            best_gap = gap;
            best_idx = i;
        }
    }
    if (any_inf) {
        rep.max_gap = ExtReal::infinity();
        rep.worst_index = inf_idx;
    } else {
        rep.max_gap = ExtReal::finite(std::max(0.0, best_gap));
        rep.worst_index = best_idx;
    }
    rep.applicable = rep.qualification.is_subspace && rep.convex_closed;
    rep.strong_ok = rep.max_gap.is_finite() && rep.max_gap.value() <= rep.tolerance;
    return rep;
}

} // namespace

QuadSetup::QuadSetup(GridFn f_, GridFn g_, RatLinMap A_, RatLinMap B_, LatticeGrid xg_,
                     LatticeGrid ug_, LatticeGrid yg_, LatticeGrid vg_, LatticeGrid xs_,
                     LatticeGrid us_, LatticeGrid ys_, LatticeGrid vs_)
    : f(std::move(f_)), g(std::move(g_)), A(std::move(A_)), B(std::move(B_)), xg(std::move(xg_)),
      ug(std::move(ug_)), yg(std::move(yg_)), vg(std::move(vg_)), xs(std::move(xs_)),
      us(std::move(us_)), ys(std::move(ys_)), vs(std::move(vs_)) {
    require(f.grid() == product(xg, ug), "QuadSetup: f is not sampled on the X x U product grid");
    require(g.grid() == product(yg, vg), "QuadSetup: g is not sampled on the Y x V product grid");
    require(A.rows() == yg.dim() && A.cols() == xg.dim(), "QuadSetup: A must map X into Y");
    require(B.rows() == ug.dim() && B.cols() == vg.dim(), "QuadSetup: B must map V into U");
    require(xs.dim() == xg.dim() && us.dim() == ug.dim() && ys.dim() == yg.dim() &&
                vs.dim() == vg.dim(),
            "QuadSetup: dual grid dimensions disagree");
    if (!grid_compatible(A, xg, yg))
        throw LatticeError("QuadSetup: A image leaves the Y lattice");
    if (!grid_compatible(B, vg, ug))
        throw LatticeError("QuadSetup: B image leaves the U lattice");
}

GridFn infconv_t3(const QuadSetup& s) {
    const std::size_t nx = s.xg.size(), nu = s.ug.size(), nv = s.vg.size();

    // y-row of g reached by each x (or none when Ax is off the Y extent).
    std::vector<std::optional<std::size_t>> yrow(nx);
    for (std::size_t ix = 0; ix < nx; ++ix) yrow[ix] = s.yg.flat_index(s.A.apply(s.xg.point(ix)));

    // f-column reached by each (u, v) through u - Bv (or none when off grid).
    std::vector<RatVec> bv(nv);
    for (std::size_t iv = 0; iv < nv; ++iv) bv[iv] = s.B.apply(s.vg.point(iv));
    std::vector<std::optional<std::size_t>> ucol(nu * nv);
    for (std::size_t iu = 0; iu < nu; ++iu) {
        RatVec u = s.ug.point(iu);
        for (std::size_t iv = 0; iv < nv; ++iv)
            ucol[iu * nv + iv] = s.ug.flat_index(vec_sub(u, bv[iv]));
    }

    std::vector<ExtReal> h(nx * nu, ExtReal::infinity());
    for (std::size_t ix = 0; ix < nx; ++ix) {
        for (std::size_t iu = 0; iu < nu; ++iu) {
            ExtReal best = ExtReal::infinity();
            for (std::size_t iv = 0; iv < nv; ++iv) {
                if (!yrow[ix]) break;
                ExtReal gv = s.g.at(*yrow[ix] * nv + iv);
                if (!gv.is_finite()) continue;
                const auto& uc = ucol[iu * nv + iv];
                if (!uc) continue;
                ExtReal fv = s.f.at(ix * nu + *uc);
                if (!fv.is_finite()) continue;
                ExtReal term;
                try {
                    term = fv + gv;
                } catch (const MinusInfinityError&) {
                    throw MinusInfinityError("infconv_t3: -inf at x=" +
                                             rat_vec_str(s.xg.point(ix)) + " u=" +
                                             rat_vec_str(s.ug.point(iu)) + " v=" +
                                             rat_vec_str(s.vg.point(iv)));
                }
                if (term < best) best = term;
            }
            h[ix * nu + iu] = best;
        }
    }
    return GridFn(product(s.xg, s.ug), std::move(h), "infconv_t3");
}

DualMin t3_dual_min(const QuadSetup& s, const GridFn& fstar, const GridFn& gstar,
                    const RatVec& x0s, const RatVec& u0s) {
    require(fstar.grid() == product(s.xs, s.us), "t3_dual_min: f* grid mismatch");
    require(gstar.grid() == product(s.ys, s.vs), "t3_dual_min: g* grid mismatch");
    if (s.ys.size() == 0) throw ValidationError("t3_dual_min: empty dual grid");

    RatLinMap At = s.A.transpose();
    RatLinMap Bt = s.B.transpose();
    RatVec btu = Bt.apply(u0s);
    // B^T u0* must land on the V* lattice for the g* term to be meaningful.
    if (!step_shift(vec_sub(btu, s.vs.origin()), s.vs))
        throw LatticeError("t3_dual_min: B^T u0* off the V* lattice");

    DualMin best{ExtReal::infinity(), std::nullopt};
    for (std::size_t iy = 0; iy < s.ys.size(); ++iy) {
        RatVec ystar = s.ys.point(iy);
        RatVec aty = At.apply(ystar);
        if (!step_shift(aty, s.xs))
            throw LatticeError("t3_dual_min: A^T y* off the X* step lattice at y*=" +
                               rat_vec_str(ystar));
        ExtReal fv = fstar.eval_ext(concat(vec_sub(x0s, aty), u0s));
        ExtReal gv = gstar.eval_ext(concat(ystar, btu));
        ExtReal term = fv + gv;
        if (term < best.value) {
            best.value = term;
            best.witness = ystar;
        }
    }
    if (!best.value.is_finite()) best.witness = std::nullopt;
    return best;
}

QcCheck check_qc_t3(const QuadSetup& s) {
    QcCheck out;
    auto domg = dom_project(s.g, first_axes(s.yg.dim()));
    auto domf = dom_project(s.f, first_axes(s.xg.dim()));
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> adomf(&lex_less);
    for (const auto& a : domf) adomf.insert(s.A.apply(a));
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> diff(&lex_less);
    for (const auto& b : domg)
        for (const auto& a : adomf) diff.insert(vec_sub(b, a));
    out.difference_set.assign(diff.begin(), diff.end());
    out.qc = cone_is_subspace(normalize_rays(out.difference_set));
    out.domains_intersect = false;
    for (const auto& b : domg)
        if (adomf.count(b)) {
            out.domains_intersect = true;
            break;
        }
    return out;
}

double instance_tolerance_t3(const QuadSetup& s) {
    double lf = slope_bounds(s.f).max_abs();
    double lg = slope_bounds(s.g).max_abs();
    double delta = 0;
    for (const LatticeGrid* g :
         {&s.xg, &s.ug, &s.yg, &s.vg, &s.xs, &s.us, &s.ys, &s.vs})
        delta = std::max(delta, grid_max_step(*g));
    return (lf + lg + 1.0) * delta;
}

DualityReport verify_t3(const QuadSetup& s, double tol, std::optional<bool> convex_closed) {
    GridFn h = infconv_t3(s);
    LatticeGrid dualg = product(s.xs, s.us);
    GridFn lhs = conjugate_fast(h, dualg);
    GridFn fstar = conjugate_fast(s.f, product(s.xs, s.us));
    GridFn gstar = conjugate_fast(s.g, product(s.ys, s.vs));

    std::vector<ExtReal> rhs(dualg.size());
    std::vector<std::optional<RatVec>> wit(dualg.size());
    const std::size_t nus = s.us.size();
    for (std::size_t ixs = 0; ixs < s.xs.size(); ++ixs) {
        RatVec x0s = s.xs.point(ixs);
        for (std::size_t ius = 0; ius < nus; ++ius) {
            DualMin dm = t3_dual_min(s, fstar, gstar, x0s, s.us.point(ius));
            rhs[ixs * nus + ius] = dm.value;
            wit[ixs * nus + ius] = std::move(dm.witness);
        }
    }

    bool cc = convex_closed ? *convex_closed
                            : (closure(s.f).same_values(s.f) && closure(s.g).same_values(s.g));
    double tolerance = tol >= 0 ? tol : instance_tolerance_t3(s);
    int nterms = s.f.grid().dim() + s.g.grid().dim() + 4;
    return assemble_report(std::move(lhs), GridFn(dualg, std::move(rhs), "t3_dual_min"),
                           std::move(wit), check_qc_t3(s), cc, tolerance, nterms);
}

Quad21Setup::Quad21Setup(GridFn k_, int dw_, RatLinMap C_, RatLinMap D_, LatticeGrid xg_,
                         LatticeGrid ug_, LatticeGrid xs_, LatticeGrid us_, LatticeGrid ws_,
                         LatticeGrid ts_)
    : k(std::move(k_)), dw(dw_), C(std::move(C_)), D(std::move(D_)), xg(std::move(xg_)),
      ug(std::move(ug_)), xs(std::move(xs_)), us(std::move(us_)), ws(std::move(ws_)),
      ts(std::move(ts_)) {
    require(dw > 0 && dw < k.grid().dim(), "Quad21Setup: invalid W block");
    const int dt = k.grid().dim() - dw;
    require(C.rows() == dw && C.cols() == xg.dim(), "Quad21Setup: C must map X into W");
    require(D.rows() == ug.dim() && D.cols() == dt, "Quad21Setup: D must map T into U");
    require(xs.dim() == xg.dim() && us.dim() == ug.dim() && ws.dim() == dw && ts.dim() == dt,
            "Quad21Setup: dual grid dimensions disagree");
    if (!grid_compatible(C, xg, block_grid(k.grid(), 0, dw)))
        throw LatticeError("Quad21Setup: C image leaves the W lattice");
}

GridFn infconv_t21(const GridFn& k, int dw, const RatLinMap& C, const RatLinMap& D,
                   const LatticeGrid& xg, const LatticeGrid& ug) {
    require(dw > 0 && dw < k.grid().dim(), "infconv_t21: invalid W block");
    const int dt = k.grid().dim() - dw;
    require(C.rows() == dw && C.cols() == xg.dim(), "infconv_t21: C shape");
    require(D.rows() == ug.dim() && D.cols() == dt, "infconv_t21: D shape");
    LatticeGrid wg = block_grid(k.grid(), 0, dw);
    LatticeGrid tg = block_grid(k.grid(), dw, dt);
    if (!grid_compatible(C, xg, wg)) throw LatticeError("infconv_t21: C image leaves the W lattice");

    // Group T grid points by their image Dt (exact membership per t).
    std::map<RatVec, std::vector<std::size_t>, bool (*)(const RatVec&, const RatVec&)> byimage(
        &lex_less);
    for (std::size_t it = 0; it < tg.size(); ++it)
        byimage[D.apply(tg.point(it))].push_back(it);

    const std::size_t nu = ug.size(), nt = tg.size();
    std::vector<ExtReal> h(xg.size() * nu, ExtReal::infinity());
    for (std::size_t ix = 0; ix < xg.size(); ++ix) {
        auto wrow = wg.flat_index(C.apply(xg.point(ix)));
        if (!wrow) continue; // Cx beyond the W extent: row stays +inf
        for (std::size_t iu = 0; iu < nu; ++iu) {
            auto it = byimage.find(ug.point(iu));
            if (it == byimage.end()) continue;
            ExtReal best = ExtReal::infinity();
            for (std::size_t tf : it->second) best = min(best, k.at(*wrow * nt + tf));
            h[ix * nu + iu] = best;
        }
    }
    return GridFn(product(xg, ug), std::move(h), "infconv_t21");
}

DualMin t21_dual_min(const GridFn& kstar, int dws, const RatLinMap& C, const RatLinMap& D,
                     const RatVec& x0s, const RatVec& u0s) {
    require(dws > 0 && dws < kstar.grid().dim(), "t21_dual_min: invalid W* block");
    LatticeGrid wsg = block_grid(kstar.grid(), 0, dws);
    LatticeGrid tsg = block_grid(kstar.grid(), dws, kstar.grid().dim() - dws);
    RatVec dtu = D.transpose().apply(u0s);
    if (!step_shift(vec_sub(dtu, tsg.origin()), tsg))
        throw LatticeError("t21_dual_min: D^T u0* off the T* lattice");
    RatLinMap Ct = C.transpose();

    DualMin best{ExtReal::infinity(), std::nullopt};
    const std::size_t nts = tsg.size();
    auto tcol = tsg.flat_index(dtu);
    for (std::size_t iw = 0; iw < wsg.size(); ++iw) {
        RatVec wstar = wsg.point(iw);
        if (Ct.apply(wstar) != x0s) continue;
        ExtReal val = tcol ? kstar.at(iw * nts + *tcol) : ExtReal::infinity();
        if (val < best.value) {
            best.value = val;
            best.witness = wstar;
        }
    }
    if (!best.value.is_finite()) best.witness = std::nullopt;
    return best;
}

QcCheck check_qc_t21(const Quad21Setup& s) {
    QcCheck out;
    auto domw = dom_project(s.k, first_axes(s.dw));
    // The subtracted set is C(X), the full range subspace, so the cone is
    // generated by the projected domain points together with +-(C columns).
    std::vector<RatVec> D = domw;
    for (int j = 0; j < s.C.cols(); ++j) {
        RatVec col(s.dw);
        for (int i = 0; i < s.dw; ++i) col[i] = s.C.at(i, j);
        D.push_back(col);
        D.push_back(vec_neg(col));
    }
    out.difference_set = domw;
    out.qc = cone_is_subspace(normalize_rays(D));
    std::vector<RatVec> cols;
    for (int j = 0; j < s.C.cols(); ++j) {
        RatVec col(s.dw);
        for (int i = 0; i < s.dw; ++i) col[i] = s.C.at(i, j);
        cols.push_back(std::move(col));
    }
    auto cb = span_basis(cols);
    out.domains_intersect = false;
    for (const auto& w : domw)
        if (in_span(w, cb)) {
            out.domains_intersect = true;
            break;
        }
    return out;
}

double instance_tolerance_t21(const Quad21Setup& s) {
    double lk = slope_bounds(s.k).max_abs();
    double delta = 0;
    for (const LatticeGrid* g : {&s.xg, &s.ug, &s.xs, &s.us, &s.ws, &s.ts})
        delta = std::max(delta, grid_max_step(*g));
    return (lk + 1.0) * delta;
}

DualityReport verify_t21(const Quad21Setup& s, double tol, std::optional<bool> convex_closed) {
    GridFn h = infconv_t21(s.k, s.dw, s.C, s.D, s.xg, s.ug);
    LatticeGrid dualg = product(s.xs, s.us);
    GridFn lhs = conjugate_fast(h, dualg);
    GridFn kstar = conjugate_fast(s.k, product(s.ws, s.ts));

    std::vector<ExtReal> rhs(dualg.size());
    std::vector<std::optional<RatVec>> wit(dualg.size());
    const std::size_t nus = s.us.size();
    for (std::size_t ixs = 0; ixs < s.xs.size(); ++ixs) {
        RatVec x0s = s.xs.point(ixs);
        for (std::size_t ius = 0; ius < nus; ++ius) {
            DualMin dm = t21_dual_min(kstar, s.dw, s.C, s.D, x0s, s.us.point(ius));
            rhs[ixs * nus + ius] = dm.value;
            wit[ixs * nus + ius] = std::move(dm.witness);
        }
    }

    bool cc = convex_closed ? *convex_closed : closure(s.k).same_values(s.k);
    double tolerance = tol >= 0 ? tol : instance_tolerance_t21(s);
    int nterms = s.k.grid().dim() + 4;
    return assemble_report(std::move(lhs), GridFn(dualg, std::move(rhs), "t21_dual_min"),
                           std::move(wit), check_qc_t21(s), cc, tolerance, nterms);
}

Lift remark22_lift(const QuadSetup& s, std::size_t max_cells) {
    LatticeGrid wg = product(s.xg, s.yg);
    LatticeGrid tg = product(s.ug, s.vg);
    if (wg.size() > max_cells / tg.size())
        throw SizeCapError("remark22_lift: product grid exceeds the cell cap");

    const std::size_t nx = s.xg.size(), ny = s.yg.size(), nu = s.ug.size(), nv = s.vg.size();
    std::vector<ExtReal> k(nx * ny * nu * nv);
    std::size_t at = 0;
    for (std::size_t ix = 0; ix < nx; ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy)
            for (std::size_t iu = 0; iu < nu; ++iu)
                for (std::size_t iv = 0; iv < nv; ++iv)
                    k[at++] = s.f.at(ix * nu + iu) + s.g.at(iy * nv + iv);

    Lift lift{GridFn(product(wg, tg), std::move(k), "remark22_lift"),
              RatLinMap::vstack(RatLinMap::identity(s.xg.dim()), s.A),
              RatLinMap::hstack(RatLinMap::identity(s.ug.dim()), s.B), wg, tg, wg.dim()};
    return lift;
}

GridFn lift_dual(const QuadSetup& s, const GridFn& fstar, const GridFn& gstar) {
    require(fstar.grid() == product(s.xs, s.us), "lift_dual: f* grid mismatch");
    require(gstar.grid() == product(s.ys, s.vs), "lift_dual: g* grid mismatch");
    const std::size_t nxs = s.xs.size(), nys = s.ys.size(), nus = s.us.size(), nvs = s.vs.size();
    std::vector<ExtReal> k(nxs * nys * nus * nvs);
    std::size_t at = 0;
    for (std::size_t ix = 0; ix < nxs; ++ix)
        for (std::size_t iy = 0; iy < nys; ++iy)
            for (std::size_t iu = 0; iu < nus; ++iu)
                for (std::size_t iv = 0; iv < nvs; ++iv)
                    k[at++] = fstar.at(ix * nus + iu) + gstar.at(iy * nvs + iv);
    return GridFn(product(product(s.xs, s.ys), product(s.us, s.vs)), std::move(k), "lift_dual");
}

Lemma2Result lemma2_sets(const std::vector<RatVec>& G, const RatLinMap& R, const LatticeGrid& box,
                         std::size_t cap) {
    if (G.empty()) throw ValidationError("lemma2_sets: G must be nonempty");
    const int dx = R.cols(), dz = R.rows();
    require(box.dim() == dx + dz, "lemma2_sets: box dimension mismatch");
    for (const auto& p : G)
        require(static_cast<int>(p.size()) == dx + dz, "lemma2_sets: point dimension mismatch");
    if (box.size() > cap) throw SizeCapError("lemma2_sets: box exceeds the cell cap");

    LatticeGrid xb = block_grid(box, 0, dx);
    LatticeGrid zb = block_grid(box, dx, dz);

    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> qg(&lex_less);
    for (const auto& p : G) {
        auto [x, y] = split_point(p, dx);
        qg.insert(vec_sub(y, R.apply(x)));
    }

    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> lhs(&lex_less), rhs(&lex_less);
    for (const auto& q : qg) {
        for (std::size_t i = 0; i < xb.size(); ++i) {
            RatVec xi = xb.point(i);
            RatVec eta = vec_add(q, R.apply(xi));
            if (zb.flat_index(eta)) lhs.insert(concat(xi, eta));
        }
    }
    for (std::size_t i = 0; i < box.size(); ++i) {
        RatVec p = box.point(i);
        auto [xi, eta] = split_point(p, dx);
        if (qg.count(vec_sub(eta, R.apply(xi)))) rhs.insert(p);
    }

    Lemma2Result res;
    res.lhs.assign(lhs.begin(), lhs.end());
    res.rhs.assign(rhs.begin(), rhs.end());
    res.equal = res.lhs == res.rhs;
    return res;
}

} // namespace cav
