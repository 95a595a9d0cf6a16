#include "cav/qualif.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cav/errors.hpp"
#include "cav/ratlp.hpp"

namespace cav {

std::vector<int> first_axes(int count) {
    std::vector<int> a(count);
    for (int i = 0; i < count; ++i) a[i] = i;
    return a;
}

std::vector<int> axes_range(int from, int count) {
    std::vector<int> a(count);
    for (int i = 0; i < count; ++i) a[i] = from + i;
    return a;
}

std::vector<RatVec> dom_project(const GridFn& f, const std::vector<int>& axes) {
    const LatticeGrid& g = f.grid();
    for (int a : axes)
        if (a < 0 || a >= g.dim()) throw DimensionError("dom_project: invalid axis block");
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> out(&lex_less);
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!f.at(i).is_finite()) continue;
        RatVec p = g.point(i);
        RatVec q;
        q.reserve(axes.size());
        for (int a : axes) q.push_back(p[a]);
        out.insert(std::move(q));
    }
    return {out.begin(), out.end()};
}

QCResult cone_is_subspace(const std::vector<RatVec>& D) {
    if (D.empty()) throw ValidationError("cone_is_subspace: empty generator set");
    const std::size_t n = D.size();
    const int d = static_cast<int>(D[0].size());
    for (const auto& v : D)
        if (static_cast<int>(v.size()) != d) throw DimensionError("cone_is_subspace: ragged generators");
    if (n > kMaxGenerators || d > kMaxConeDim)
        throw SizeCapError("cone_is_subspace: instance exceeds 64 generators x dim 8 cap");

    QCResult res;
    res.generators = D;

    std::vector<RatVec> rows(d, RatVec(n, Rat(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) rows[i][j] = D[j][i];

    res.is_subspace = true;
    res.combos.assign(n, RatVec());
    for (std::size_t j = 0; j < n; ++j) {
        RatVec b = vec_neg(D[j]);
        LpResult lr = lp_feasible(rows, b);
        if (lr.status == LpResult::Status::Optimal) {
            res.combos[j] = lr.solution;
        } else {
            res.is_subspace = false;
            res.failing = j;
            res.separating = lr.farkas;
            res.combos.clear();
            break;
        }
    }
    if (res.is_subspace) res.basis = span_basis(D);
    return res;
}

std::vector<RatVec> span_basis(const std::vector<RatVec>& vecs) {
    std::vector<RatVec> rowsp;
    for (const auto& v : vecs) {
        RatVec w = v;
        for (const auto& b : rowsp) {
            // b has a leading 1 at its pivot; eliminate.
            std::size_t piv = 0;
            while (piv < b.size() && b[piv] == 0) ++piv;
            if (piv < b.size() && w[piv] != 0) {
                Rat f = w[piv];
                for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * b[i];
            }
        }
        std::size_t piv = 0;
        while (piv < w.size() && w[piv] == 0) ++piv;
        if (piv == w.size()) continue;
        Rat f = w[piv];
        for (auto& x : w) x /= f;
        rowsp.push_back(std::move(w));
    }
    std::sort(rowsp.begin(), rowsp.end(), lex_less);
    return rowsp;
}

bool in_span(const RatVec& v, const std::vector<RatVec>& basis) {
    RatVec w = v;
    for (const auto& b : basis) {
        std::size_t piv = 0;
        while (piv < b.size() && b[piv] == 0) ++piv;
        if (piv < b.size() && w[piv] != 0) {
            Rat f = w[piv];
            for (std::size_t i = 0; i < w.size(); ++i) w[i] -= f * b[i];
        }
    }
    for (const auto& x : w)
        if (x != 0) return false;
    return true;
}

bool same_span(const std::vector<RatVec>& a, const std::vector<RatVec>& b) {
    std::vector<RatVec> ba = span_basis(a), bb = span_basis(b);
    for (const auto& v : ba)
        if (!in_span(v, bb)) return false;
    for (const auto& v : bb)
        if (!in_span(v, ba)) return false;
    return true;
}

SandwichResult sandwich_check(const std::vector<RatVec>& S_inner,
                              const std::vector<RatVec>& H_basis,
                              const std::vector<RatVec>& D_outer) {
    SandwichResult r;
    std::vector<RatVec> Hb = span_basis(H_basis);
    r.inner_in_H = true;
    for (const auto& s : S_inner)
        if (!in_span(s, Hb)) {
            r.inner_in_H = false;
            break;
        }

    // H ⊂ cone(D_outer): a subspace lies in a cone iff ± every basis vector
    // is a nonnegative combination of the generators.
    const std::size_t n = D_outer.size();
    const int d = D_outer.empty() ? 0 : static_cast<int>(D_outer[0].size());
    std::vector<RatVec> rows(d, RatVec(n, Rat(0)));
    for (std::size_t j = 0; j < n; ++j)
        for (int i = 0; i < d; ++i) rows[i][j] = D_outer[j][i];
    r.H_in_cone = true;
    for (const auto& h : Hb) {
        for (int sign = 0; sign < 2 && r.H_in_cone; ++sign) {
            RatVec b = sign ? vec_neg(h) : h;
            if (lp_feasible(rows, b).status != LpResult::Status::Optimal) r.H_in_cone = false;
        }
        if (!r.H_in_cone) break;
    }

    r.hypothesis_ok = r.inner_in_H && r.H_in_cone;
    r.qc = cone_is_subspace(D_outer);
    r.conclusion_ok = r.qc.is_subspace && same_span(r.qc.basis, Hb);
    r.ok = r.hypothesis_ok && r.conclusion_ok;
    return r;
}

ContainmentResult closure_containment(const std::vector<RatVec>& inner,
                                      const std::vector<RatVec>& cover, double tol) {
    ContainmentResult r;
    for (const auto& p : inner) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : cover) {
            Rat ss = 0;
            for (std::size_t i = 0; i < p.size(); ++i) {
                Rat dlt = p[i] - q[i];
                ss += dlt * dlt;
            }
            best = std::min(best, std::sqrt(to_double(ss)));
            if (best == 0) break;
        }
        if (best > r.worst) {
            r.worst = best;
            r.worst_point = p;
        }
    }
    r.ok = r.worst <= tol;
    return r;
}

} // namespace cav
