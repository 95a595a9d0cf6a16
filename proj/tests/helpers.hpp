#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cav/gridfn.hpp"

namespace cavtest {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline cav::GridFn mk(const cav::LatticeGrid& g, const std::vector<double>& v,
                      const std::string& label = "") {
    std::vector<cav::ExtReal> e;
    e.reserve(v.size());
    for (double x : v)
        e.push_back(std::isinf(x) ? cav::ExtReal::infinity() : cav::ExtReal::finite(x));
    return cav::GridFn(g, std::move(e), label);
}

inline cav::LatticeGrid line(long lo, long hi, cav::Rat step = cav::Rat(1),
                             cav::Rat origin = cav::Rat(0)) {
    return cav::LatticeGrid::line(origin, step, lo, hi);
}

// Random grid with rational steps and a random value profile including +inf
// patches; always proper.
struct RandomFn {
    cav::GridFn fn;
    cav::LatticeGrid dual;
};

inline RandomFn random_gridfn(std::mt19937_64& rng, int max_dim = 4, long max_pts = 9,
                              std::size_t cell_cap = 1500) {
    std::uniform_real_distribution<double> U(-3.0, 3.0);
    int d = 1 + static_cast<int>(rng() % max_dim);
    auto pick_axis = [&](cav::RatVec& origin, cav::RatVec& step,
                         std::vector<cav::AxisExtent>& ext, std::size_t budget) {
        static const cav::Rat steps[] = {cav::Rat(1), cav::Rat(1, 2), cav::Rat(1, 4),
                                         cav::Rat(3, 4), cav::Rat(2)};
        static const cav::Rat origins[] = {cav::Rat(0), cav::Rat(1, 2), cav::Rat(-1)};
        long n = 1 + static_cast<long>(rng() % static_cast<unsigned long>(max_pts));
        while (static_cast<std::size_t>(n) > budget && n > 1) --n;
        long lo = -(static_cast<long>(rng() % static_cast<unsigned long>(n)));
        origin.push_back(origins[rng() % 3]);
        step.push_back(steps[rng() % 5]);
        ext.push_back({lo, lo + n - 1});
    };

    cav::RatVec po, ps, qo, qs;
    std::vector<cav::AxisExtent> pe, qe;
    std::size_t cells = 1;
    for (int a = 0; a < d; ++a) {
        pick_axis(po, ps, pe, cell_cap / cells);
        cells *= static_cast<std::size_t>(pe.back().size());
    }
    cav::LatticeGrid pg(po, ps, pe);
    cells = 1;
    for (int a = 0; a < d; ++a) {
        pick_axis(qo, qs, qe, cell_cap / cells);
        cells *= static_cast<std::size_t>(qe.back().size());
    }
    cav::LatticeGrid dual(qo, qs, qe);

    std::vector<cav::ExtReal> vals(pg.size());
    bool any_fin = false;
    double inf_prob = (rng() % 3 == 0) ? 0.3 : 0.0;
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (auto& v : vals) {
        if (coin(rng) < inf_prob) {
            v = cav::ExtReal::infinity();
        } else {
            v = cav::ExtReal::finite(U(rng));
            any_fin = true;
        }
    }
    if (!any_fin) vals[rng() % vals.size()] = cav::ExtReal::finite(U(rng));
    return RandomFn{cav::GridFn(pg, std::move(vals), "rand"), dual};
}

} // namespace cavtest
