#include "cav/ratlp.hpp"

#include <algorithm>

#include "cav/errors.hpp"

namespace cav {

namespace {

struct Tableau {
    std::size_t m, n; // rows, structural columns
    std::vector<RatVec> t; // m rows x (n + m + 1); artificials then rhs
    RatVec obj; // reduced-cost row over n + m columns
    Rat objval;
    std::vector<std::size_t> basis; // per row, column index
    std::vector<int> rowsign; // original row scaling

    std::size_t rhs() const { return n + m; }
};

// Bland's rule pivoting on the canonical tableau. Returns false when optimal,
// throws on unboundedness via the out-param.
bool pivot_step(Tableau& tb, const std::vector<bool>& allowed, bool& unbounded) {
    unbounded = false;
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < tb.n + tb.m; ++j) {
        if (!allowed[j]) continue;
        if (tb.obj[j] < 0) {
            enter = j;
            break;
        }
    }
    if (enter == SIZE_MAX) return false;

    std::size_t leave = SIZE_MAX;
    Rat best;
    for (std::size_t i = 0; i < tb.m; ++i) {
        if (tb.t[i][enter] <= 0) continue;
        Rat ratio = tb.t[i][tb.rhs()] / tb.t[i][enter];
        if (leave == SIZE_MAX || ratio < best ||
            (ratio == best && tb.basis[i] < tb.basis[leave])) {
            leave = i;
            best = ratio;
        }
    }
    if (leave == SIZE_MAX) {
        unbounded = true;
        return false;
    }

    Rat piv = tb.t[leave][enter];
    for (auto& v : tb.t[leave]) v /= piv;
    for (std::size_t i = 0; i < tb.m; ++i) {
        if (i == leave || tb.t[i][enter] == 0) continue;
        Rat f = tb.t[i][enter];
        for (std::size_t j = 0; j <= tb.rhs(); ++j) tb.t[i][j] -= f * tb.t[leave][j];
    }
    if (tb.obj[enter] != 0) {
        Rat f = tb.obj[enter];
        for (std::size_t j = 0; j < tb.rhs(); ++j) tb.obj[j] -= f * tb.t[leave][j];
        tb.objval -= f * tb.t[leave][tb.rhs()];
    }
    tb.basis[leave] = enter;
    return true;
}

void run_simplex(Tableau& tb, const std::vector<bool>& allowed, std::size_t cap, bool& unbounded) {
    std::size_t steps = 0;
    bool moved = true;
    while (moved) {
        if (++steps > cap) throw SizeCapError("ratlp: pivot cap exceeded");
        moved = pivot_step(tb, allowed, unbounded);
        if (unbounded) return;
    }
}

} // namespace

LpResult solve_eq_lp(const std::vector<RatVec>& rows, const RatVec& b, const RatVec& c,
                     std::size_t pivot_cap) {
    std::size_t m = rows.size();
    if (m == 0) throw DimensionError("ratlp: no rows");
    std::size_t n = rows[0].size();
    for (const auto& r : rows)
        if (r.size() != n) throw DimensionError("ratlp: ragged rows");
    if (b.size() != m || c.size() != n) throw DimensionError("ratlp: rhs/cost size mismatch");

    Tableau tb;
    tb.m = m;
    tb.n = n;
    tb.rowsign.assign(m, 1);
    tb.t.assign(m, RatVec(n + m + 1, Rat(0)));
    for (std::size_t i = 0; i < m; ++i) {
        int s = b[i] < 0 ? -1 : 1;
        tb.rowsign[i] = s;
        for (std::size_t j = 0; j < n; ++j) tb.t[i][j] = s * rows[i][j];
        tb.t[i][n + i] = 1;
        tb.t[i][n + m] = s * b[i];
    }
    tb.basis.resize(m);
    for (std::size_t i = 0; i < m; ++i) tb.basis[i] = n + i;

    // Phase 1: minimize the artificial sum; canonical reduced costs.
    tb.obj.assign(n + m, Rat(0));
    tb.objval = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) tb.obj[j] -= tb.t[i][j];
        tb.objval -= tb.t[i][n + m];
    }
    std::vector<bool> allowed(n + m, true);
    bool unbounded = false;
    run_simplex(tb, allowed, pivot_cap, unbounded);
    // Phase 1 is never unbounded (objective bounded below by 0).

    Rat phase1 = -tb.objval; // current artificial sum
    LpResult res;
    if (phase1 > 0) {
        res.status = LpResult::Status::Infeasible;
        // Multipliers from the artificial reduced costs: y_i = 1 - obj[n+i],
        // unscaled back through the row signs.
        res.farkas.assign(m, Rat(0));
        for (std::size_t i = 0; i < m; ++i) res.farkas[i] = tb.rowsign[i] * (Rat(1) - tb.obj[n + i]);
        // Verify y^T A <= 0 and y^T b > 0 exactly; flip if the sign convention
        // came out inverted.
        auto check = [&](const RatVec& y) {
            Rat yb = 0;
            for (std::size_t i = 0; i < m; ++i) yb += y[i] * b[i];
            if (yb <= 0) return false;
            for (std::size_t j = 0; j < n; ++j) {
                Rat ya = 0;
                for (std::size_t i = 0; i < m; ++i) ya += y[i] * rows[i][j];
                if (ya > 0) return false;
            }
            return true;
        };
        if (!check(res.farkas)) {
            RatVec neg = res.farkas;
            for (auto& v : neg) v = -v;
            if (check(neg))
                res.farkas = neg;
            else
                throw Error("ratlp: Farkas certificate failed verification");
        }
        return res;
    }

    // Drive leftover artificials out of the basis (degenerate at zero).
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] < n) continue;
        std::size_t enter = SIZE_MAX;
        for (std::size_t j = 0; j < n; ++j)
            if (tb.t[i][j] != 0) {
                enter = j;
                break;
            }
        if (enter == SIZE_MAX) continue; // redundant row; harmless to keep
        Rat piv = tb.t[i][enter];
        for (auto& v : tb.t[i]) v /= piv;
        for (std::size_t r = 0; r < m; ++r) {
            if (r == i || tb.t[r][enter] == 0) continue;
            Rat f = tb.t[r][enter];
            for (std::size_t j = 0; j <= tb.rhs(); ++j) tb.t[r][j] -= f * tb.t[i][j];
        }
        tb.basis[i] = enter;
    }

    // Phase 2 over the structural columns only.
    for (std::size_t j = 0; j < n + m; ++j) allowed[j] = j < n;
    tb.obj.assign(n + m, Rat(0));
    tb.objval = 0;
    for (std::size_t j = 0; j < n; ++j) tb.obj[j] = c[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (tb.basis[i] >= n) continue;
        Rat cb = c[tb.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j < n + m; ++j) tb.obj[j] -= cb * tb.t[i][j];
        tb.objval -= cb * tb.t[i][n + m];
    }
    run_simplex(tb, allowed, pivot_cap, unbounded);
    if (unbounded) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }

    res.status = LpResult::Status::Optimal;
    res.solution.assign(n, Rat(0));
    for (std::size_t i = 0; i < m; ++i)
        if (tb.basis[i] < n) res.solution[tb.basis[i]] = tb.t[i][n + m];
    res.objective = -tb.objval;
    return res;
}

LpResult lp_feasible(const std::vector<RatVec>& rows, const RatVec& b, std::size_t pivot_cap) {
    RatVec c(rows.empty() ? 0 : rows[0].size(), Rat(0));
    return solve_eq_lp(rows, b, c, pivot_cap);
}

} // namespace cav
