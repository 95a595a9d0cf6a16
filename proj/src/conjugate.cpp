#include "cav/conjugate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "cav/errors.hpp"
#include "cav/ratlp.hpp"

namespace cav {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> negated_values(const GridFn& f) {
    std::vector<double> neg(f.grid().size());
    for (std::size_t i = 0; i < neg.size(); ++i) {
        const ExtReal& v = f.at(i);
        neg[i] = v.is_finite() ? -v.value() : kNegInf;
    }
    return neg;
}

void check_dual(const GridFn& f, const LatticeGrid& dual) {
    if (dual.dim() != f.grid().dim()) throw DimensionError("conjugate: dual grid dim mismatch");
}

// ---------------------------------------------------------------------------
// 1-d transform: out[b] = max_i ((p[i] * s[b]) + q[i]) with the exact double
// semantics of the expression as written. Lines with q = -inf are absent; the
// result is -inf only when every line is absent.
//
// The fast path prunes with the exact upper envelope of the real lines
// (P_i s + Q_i over the rationals lifted from the doubles), keeping as
// candidates every line whose envelope gap somewhere in a query segment is
// within margin2, a rigorous bound on twice the evaluation rounding error.
// Anything outside that margin provably loses the double-level maximum.
// ---------------------------------------------------------------------------
struct LineKernel {
    const std::vector<double>& p;
    const std::vector<Rat>& P; // exact lifts of p
    const std::vector<double>& s;
    const std::vector<Rat>& S; // exact lifts of s

    void run(const std::vector<double>& q, std::vector<double>& out) const {
        const std::size_t n = p.size(), m = s.size();
        out.assign(m, kNegInf);
        std::vector<std::size_t> F;
        F.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            if (q[i] != kNegInf) F.push_back(i);
        if (F.empty()) return;
        if (F.size() <= 6 || m <= 4) {
            scan(F, q, out);
            return;
        }
        fast(F, q, out);
    }

private:
    void scan(const std::vector<std::size_t>& idx, const std::vector<double>& q,
              std::vector<double>& out) const {
        for (std::size_t b = 0; b < s.size(); ++b) {
            double best = kNegInf;
            for (std::size_t i : idx) {
                double v = (p[i] * s[b]) + q[i];
                if (v > best) best = v;
            }
            out[b] = best;
        }
    }

    void fast(const std::vector<std::size_t>& F, const std::vector<double>& q,
              std::vector<double>& out) const {
        // Deduplicate equal double slopes, keeping the dominating intercept.
        std::vector<std::size_t> lines;
        lines.reserve(F.size());
        for (std::size_t i : F) {
            if (!lines.empty() && p[lines.back()] == p[i]) {
                if (q[i] > q[lines.back()]) lines.back() = i;
            } else {
                lines.push_back(i);
            }
        }

        std::vector<Rat> Q(p.size());
        for (std::size_t i : F) Q[i] = rat_of(q[i]);

        // Exact upper envelope (slopes strictly ascending along `lines`).
        std::vector<std::size_t> sv;
        std::vector<Rat> cross; // cross[k] between sv[k-1] and sv[k]
        auto val_at = [&](std::size_t i, const Rat& x) { return P[i] * x + Q[i]; };
        for (std::size_t i : lines) {
            while (!sv.empty()) {
                if (sv.size() >= 2) {
                    const Rat& c = cross.back();
                    if (val_at(i, c) >= val_at(sv.back(), c)) {
                        sv.pop_back();
                        cross.pop_back();
                        continue;
                    }
                } else {
                    // Single line on the stack: it survives unless parallel
                    // domination, which dedupe already removed.
                }
                break;
            }
            if (!sv.empty()) {
                std::size_t t = sv.back();
                cross.push_back((Q[t] - Q[i]) / (P[i] - P[t]));
            }
            sv.push_back(i);
        }
        const std::size_t K = sv.size();

        // Rounding margin: covers two evaluations' worth of error with room.
        double pmax = 0, qmax = 0;
        for (std::size_t i : F) {
            pmax = std::max(pmax, std::fabs(p[i]));
            qmax = std::max(qmax, std::fabs(q[i]));
        }
        double smax = std::max(std::fabs(s.front()), std::fabs(s.back()));
        Rat margin2 = rat_of(std::ldexp(pmax * smax + qmax, -47));

        const Rat Smin = S.front(), Smax = S.back();
        // Segment t of the envelope covers [cross[t-1], cross[t]] clamped to
        // the query range; seg_lo/seg_hi give the clamped endpoints.
        auto seg_lo = [&](std::size_t t) { return t == 0 ? Smin : std::max(cross[t - 1], Smin); };
        auto seg_hi = [&](std::size_t t) { return t + 1 == K ? Smax : std::min(cross[t], Smax); };
        auto seg_gap_min = [&](std::size_t t, std::size_t i) {
            Rat lo = seg_lo(t), hi = seg_hi(t);
            if (lo > hi) return std::optional<Rat>{}; // no queries in segment
            Rat g1 = val_at(sv[t], lo) - val_at(i, lo);
            Rat g2 = val_at(sv[t], hi) - val_at(i, hi);
            return std::optional<Rat>{g1 < g2 ? g1 : g2};
        };

        // Segments intersecting the query range; the gap functions are convex
        // in s, so restricted to [t_min, t_max] their minimum sits at the
        // slope junction clamped into that range.
        std::size_t t_min = 0, t_max = K - 1;
        while (t_min + 1 < K && cross[t_min] < Smin) ++t_min;
        while (t_max > 0 && cross[t_max - 1] > Smax) --t_max;

        std::vector<std::vector<std::size_t>> danger(K);
        for (std::size_t i : F) {
            std::size_t k = std::lower_bound(sv.begin(), sv.end(), i,
                                             [&](std::size_t a, std::size_t b2) {
                                                 return P[a] < P[b2];
                                             }) -
                            sv.begin();
            std::size_t t0 = k == 0 ? 0 : k - 1;
            t0 = std::max(t_min, std::min(t0, t_max));
            auto dangerous = [&](std::size_t t) {
                auto g = seg_gap_min(t, i);
                return g && *g <= margin2;
            };
            std::size_t start = K;
            if (dangerous(t0))
                start = t0;
            else if (t0 + 1 <= t_max && dangerous(t0 + 1))
                start = t0 + 1;
            if (start == K) continue;
            danger[start].push_back(i);
            for (std::size_t t = start; t-- > t_min && dangerous(t);) danger[t].push_back(i);
            for (std::size_t t = start + 1; t <= t_max && dangerous(t); ++t) danger[t].push_back(i);
        }

        std::size_t seg = 0;
        for (std::size_t b = 0; b < s.size(); ++b) {
            while (seg + 1 < K && cross[seg] < S[b]) ++seg;
            double best = kNegInf;
            for (std::size_t i : danger[seg]) {
                double v = (p[i] * s[b]) + q[i];
                if (v > best) best = v;
            }
            out[b] = best;
        }
    }
};

} // namespace

GridFn conjugate(const GridFn& f, const LatticeGrid& dual) {
    check_dual(f, dual);
    const LatticeGrid& pg = f.grid();
    const int d = pg.dim();
    std::vector<std::vector<double>> pc(d), dc(d);
    for (int a = 0; a < d; ++a) {
        pc[a] = pg.axis_coords_dbl(a);
        dc[a] = dual.axis_coords_dbl(a);
    }
    std::vector<double> neg = negated_values(f);

    const std::size_t N = pg.size(), M = dual.size();
    std::vector<ExtReal> vals(M);
    std::vector<long> pidx(d), didx(d, 0);
    for (std::size_t b = 0; b < M; ++b) {
        double best = kNegInf;
        std::fill(pidx.begin(), pidx.end(), 0);
        for (std::size_t a = 0; a < N; ++a) {
            double acc = neg[a];
            if (acc != kNegInf) {
                for (int j = d - 1; j >= 0; --j) acc = (pc[j][pidx[j]] * dc[j][didx[j]]) + acc;
                if (acc > best) best = acc;
            }
            for (int j = d - 1; j >= 0; --j) {
                if (++pidx[j] < static_cast<long>(pc[j].size())) break;
                pidx[j] = 0;
            }
        }
        if (!std::isfinite(best)) throw Error("conjugate: non-finite result (overflow?)");
        vals[b] = ExtReal::finite(best);
        for (int j = d - 1; j >= 0; --j) {
            if (++didx[j] < static_cast<long>(dc[j].size())) break;
            didx[j] = 0;
        }
    }
    return GridFn(dual, std::move(vals), f.label().empty() ? "conj" : f.label() + "*");
}

GridFn conjugate_fast(const GridFn& f, const LatticeGrid& dual) {
    check_dual(f, dual);
    const LatticeGrid& pg = f.grid();
    const int d = pg.dim();

    std::vector<std::vector<double>> pc(d), dc(d);
    std::vector<std::vector<Rat>> pr(d), dr(d);
    for (int a = 0; a < d; ++a) {
        pc[a] = pg.axis_coords_dbl(a);
        dc[a] = dual.axis_coords_dbl(a);
        pr[a].reserve(pc[a].size());
        for (double v : pc[a]) pr[a].push_back(rat_of(v));
        dr[a].reserve(dc[a].size());
        for (double v : dc[a]) dr[a].push_back(rat_of(v));
    }

    std::vector<double> cur = negated_values(f);
    std::vector<std::size_t> shape(d);
    for (int a = 0; a < d; ++a) shape[a] = pc[a].size();

    std::vector<double> lineq, lineout, next;
    for (int j = d - 1; j >= 0; --j) {
        std::size_t outer = 1, inner = 1;
        for (int a = 0; a < j; ++a) outer *= shape[a];
        for (int a = j + 1; a < d; ++a) inner *= shape[a];
        const std::size_t nj = shape[j], mj = dc[j].size();
        next.assign(outer * mj * inner, kNegInf);
        LineKernel kern{pc[j], pr[j], dc[j], dr[j]};
        lineq.resize(nj);
        for (std::size_t o = 0; o < outer; ++o) {
            for (std::size_t r = 0; r < inner; ++r) {
                for (std::size_t i = 0; i < nj; ++i) lineq[i] = cur[(o * nj + i) * inner + r];
                kern.run(lineq, lineout);
                for (std::size_t b = 0; b < mj; ++b) next[(o * mj + b) * inner + r] = lineout[b];
            }
        }
        cur.swap(next);
        shape[j] = mj;
    }

    std::vector<ExtReal> vals(cur.size());
    for (std::size_t i = 0; i < cur.size(); ++i) {
        if (!std::isfinite(cur[i])) throw Error("conjugate_fast: non-finite result");
        vals[i] = ExtReal::finite(cur[i]);
    }
    return GridFn(dual, std::move(vals), f.label().empty() ? "conj" : f.label() + "*");
}

namespace {

// One exact lower-envelope sweep; values are replaced by the rounded envelope.
std::vector<ExtReal> envelope_pass(const LatticeGrid& g, const std::vector<ExtReal>& vals) {
    std::vector<ExtReal> env(vals.size());
    if (g.dim() == 1) {
        struct Pt {
            Rat x, y;
        };
        std::vector<Pt> pts;
        RatVec coords = g.axis_coords(0);
        for (std::size_t i = 0; i < vals.size(); ++i)
            if (vals[i].is_finite()) pts.push_back({coords[i], rat_of(vals[i].value())});
        std::vector<Pt> hull;
        for (const auto& pt : pts) {
            while (hull.size() >= 2) {
                const Pt& a = hull[hull.size() - 2];
                const Pt& b = hull[hull.size() - 1];
                // Keep only strict right turns (lower hull).
                if ((b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x) <= 0)
                    hull.pop_back();
                else
                    break;
            }
            hull.push_back(pt);
        }
        for (std::size_t i = 0; i < vals.size(); ++i) {
            const Rat& x = coords[i];
            if (x < hull.front().x || x > hull.back().x) {
                env[i] = ExtReal::infinity();
                continue;
            }
            std::size_t k = 1;
            while (k < hull.size() && hull[k].x < x) ++k;
            Rat v;
            if (k == hull.size() || hull[k].x == x) {
                v = k == hull.size() ? hull.back().y : hull[k].y;
            } else {
                const Pt& a = hull[k - 1];
                const Pt& b = hull[k];
                v = a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
            }
            double dv = to_double(v);
            if (vals[i].is_finite() && dv > vals[i].value()) dv = vals[i].value();
            env[i] = ExtReal::finite(dv);
        }
        return env;
    }

    // d >= 2: exact LP per grid point over the finite samples.
    std::vector<std::size_t> dom;
    for (std::size_t i = 0; i < vals.size(); ++i)
        if (vals[i].is_finite()) dom.push_back(i);
    const int d = g.dim();
    std::vector<RatVec> rows(d + 1, RatVec(dom.size(), Rat(0)));
    RatVec cost(dom.size());
    for (std::size_t j = 0; j < dom.size(); ++j) {
        RatVec pt = g.point(dom[j]);
        for (int i = 0; i < d; ++i) rows[i][j] = pt[i];
        rows[d][j] = 1;
        cost[j] = rat_of(vals[dom[j]].value());
    }
    RatVec b(d + 1, Rat(0));
    b[d] = 1;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        RatVec x = g.point(i);
        for (int a = 0; a < d; ++a) b[a] = x[a];
        LpResult lr = solve_eq_lp(rows, b, cost);
        if (lr.status == LpResult::Status::Infeasible) {
            env[i] = ExtReal::infinity();
            continue;
        }
        if (lr.status != LpResult::Status::Optimal) throw Error("closure: unexpected LP status");
        double dv = to_double(lr.objective);
        if (vals[i].is_finite() && dv > vals[i].value()) dv = vals[i].value();
        env[i] = ExtReal::finite(dv);
    }
    return env;
}

} // namespace

GridFn closure(const GridFn& f) {
    std::vector<ExtReal> vals = f.values();
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<ExtReal> env = envelope_pass(f.grid(), vals);
        if (env == vals) return GridFn(f.grid(), std::move(env), f.label());
        vals = std::move(env);
    }
    throw Error("closure: hull fixpoint failed to converge");
}

GridFn biconjugate_via(const GridFn& f, const LatticeGrid& dual) {
    check_dual(f, dual);
    SlopeBounds sb = slope_bounds(f);
    for (int a = 0; a < f.grid().dim(); ++a) {
        double lo = to_double(dual.coord(a, dual.extent()[a].lo));
        double hi = to_double(dual.coord(a, dual.extent()[a].hi));
        if (sb.lo[a] < lo)
            throw SlopeRangeError("biconjugate_via: dual grid misses achieved slope on axis " +
                                      std::to_string(a),
                                  sb.lo[a]);
        if (sb.hi[a] > hi)
            throw SlopeRangeError("biconjugate_via: dual grid misses achieved slope on axis " +
                                      std::to_string(a),
                                  sb.hi[a]);
    }
    GridFn star = conjugate_fast(f, dual);
    return conjugate_fast(star, f.grid());
}

ExtReal fy_gap(const GridFn& f, const RatVec& x, const RatVec& s) {
    auto idx = f.grid().flat_index(x);
    if (!idx) throw OffGridError("fy_gap: x not on the function's grid");
    ExtReal fx = f.at(*idx);
    if (!fx.is_finite()) return ExtReal::infinity();

    // f*(s) by direct scan with the shared evaluation order.
    const LatticeGrid& pg = f.grid();
    const int d = pg.dim();
    std::vector<std::vector<double>> pc(d);
    for (int a = 0; a < d; ++a) pc[a] = pg.axis_coords_dbl(a);
    std::vector<double> sd(d);
    for (int a = 0; a < d; ++a) sd[a] = to_double(s[a]);
    std::vector<double> neg = negated_values(f);
    double best = kNegInf;
    std::vector<long> pidx(d, 0);
    for (std::size_t a = 0; a < pg.size(); ++a) {
        double acc = neg[a];
        if (acc != kNegInf) {
            for (int j = d - 1; j >= 0; --j) acc = (pc[j][pidx[j]] * sd[j]) + acc;
            if (acc > best) best = acc;
        }
        for (int j = d - 1; j >= 0; --j) {
            if (++pidx[j] < static_cast<long>(pc[j].size())) break;
            pidx[j] = 0;
        }
    }
    double pair = to_double(dot(x, s));
    return ExtReal::finite((fx.value() + best) - pair);
}

ExtReal fy_gap(const GridFn& f, const DualPairing& pairing, const RatVec& x, const RatVec& s) {
    if (pairing.primal != f.grid()) throw ValidationError("fy_gap: pairing primal grid mismatch");
    if (!pairing.dual.flat_index(s)) throw OffGridError("fy_gap: s not on the declared dual grid");
    return fy_gap(f, x, s);
}

double SlopeBounds::max_abs() const {
    double m = 0;
    for (double v : lo) m = std::max(m, std::fabs(v));
    for (double v : hi) m = std::max(m, std::fabs(v));
    return m;
}

SlopeBounds slope_bounds(const GridFn& f) {
    const LatticeGrid& g = f.grid();
    const int d = g.dim();
    SlopeBounds sb;
    sb.lo.assign(d, 0.0);
    sb.hi.assign(d, 0.0);
    for (int a = 0; a < d; ++a) {
        std::size_t inner = 1, outer = 1;
        for (int l = a + 1; l < d; ++l) inner *= g.axis_size(l);
        for (int l = 0; l < a; ++l) outer *= g.axis_size(l);
        const std::size_t na = g.axis_size(a);
        std::vector<double> xs = g.axis_coords_dbl(a);
        bool any = false;
        double lo = 0, hi = 0;
        for (std::size_t o = 0; o < outer; ++o)
            for (std::size_t r = 0; r < inner; ++r) {
                for (std::size_t i = 0; i < na; ++i) {
                    ExtReal vi = f.at((o * na + i) * inner + r);
                    if (!vi.is_finite()) continue;
                    for (std::size_t j = i + 1; j < na; ++j) {
                        ExtReal vj = f.at((o * na + j) * inner + r);
                        if (!vj.is_finite()) continue;
                        double qv = (vj.value() - vi.value()) / (xs[j] - xs[i]);
                        if (!any) {
                            lo = hi = qv;
                            any = true;
                        } else {
                            lo = std::min(lo, qv);
                            hi = std::max(hi, qv);
                        }
                    }
                }
            }
        sb.lo[a] = any ? lo : 0.0;
        sb.hi[a] = any ? hi : 0.0;
    }
    return sb;
}

double grid_max_step(const LatticeGrid& g) {
    double m = 0;
    for (int a = 0; a < g.dim(); ++a) m = std::max(m, to_double(g.step()[a]));
    return m;
}

} // namespace cav
