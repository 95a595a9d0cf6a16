#include <doctest.h>

#include <random>

#include "cav/extreal.hpp"
#include "cav/gridfn.hpp"
#include "cav/linmap.hpp"
#include "cav/polytope.hpp"
#include "cav/ratlp.hpp"
#include "cav/rational.hpp"

using namespace cav;

TEST_CASE("rat_of is an exact lift") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(-1e6, 1e6);
    for (int i = 0; i < 2000; ++i) {
        double v = U(rng);
        CHECK(to_double(rat_of(v)) == v);
    }
    CHECK(rat_of(0.5) == Rat(1, 2));
    CHECK(rat_of(-0.25) == Rat(-1, 4));
    CHECK(rat_of(3.0) == Rat(3));
    CHECK_THROWS_AS(rat_of(std::numeric_limits<double>::infinity()), Error);
}

TEST_CASE("parse_rat handles fractions and decimals") {
    CHECK(*parse_rat("3") == Rat(3));
    CHECK(*parse_rat("-1/2") == Rat(-1, 2));
    CHECK(*parse_rat("0.25") == Rat(1, 4));
    CHECK(*parse_rat("2.5e-1") == Rat(1, 4));
    CHECK(*parse_rat(" 7 / 4 ") == Rat(7, 4));
    CHECK(!parse_rat("abc"));
    CHECK(!parse_rat("1/0"));
}

TEST_CASE("ExtReal ordering and absorption") {
    ExtReal inf = ExtReal::infinity();
    ExtReal two = ExtReal::finite(2.0);
    CHECK(inf + two == inf);
    CHECK((two + two).value() == 4.0);
    CHECK(two < inf);
    CHECK(max(two, inf) == inf);
    CHECK(min(two, inf) == two);
    CHECK_THROWS_AS(ExtReal::finite(std::nan("")), Error);
}

TEST_CASE("lattice grid enumeration is row-major and exact") {
    LatticeGrid g({Rat(0), Rat(0)}, {Rat(1), Rat(1, 2)}, {{-1, 1}, {0, 2}});
    CHECK(g.size() == 9);
    CHECK(g.point(0) == RatVec{Rat(-1), Rat(0)});
    CHECK(g.point(1) == RatVec{Rat(-1), Rat(1, 2)});
    CHECK(g.point(3) == RatVec{Rat(0), Rat(0)});
    CHECK(g.flat_index(RatVec{Rat(1), Rat(1)}) == 8 - 1 + 1);
    CHECK(!g.flat_index(RatVec{Rat(1, 3), Rat(0)}));
    CHECK(g.on_lattice(RatVec{Rat(5), Rat(-3)}));
    CHECK(!g.flat_index(RatVec{Rat(5), Rat(-3)})); // off extent
}

TEST_CASE("grid_compatible decides membership exactly") {
    LatticeGrid unit = LatticeGrid::line(Rat(0), Rat(1), -2, 2);
    LatticeGrid fine = LatticeGrid::line(Rat(0), Rat(1, 2), -4, 4);
    CHECK(grid_compatible(RatLinMap::identity(1), unit, unit));
    CHECK(grid_compatible(RatLinMap::scalar(Rat(2)), unit, unit));
    // halving an integer grid leaves the integer lattice
    CHECK(!grid_compatible(RatLinMap::scalar(Rat(1, 2)), unit, unit));
    CHECK(grid_compatible(RatLinMap::scalar(Rat(1, 2)), unit, fine));
    CHECK_THROWS_AS(grid_compatible(RatLinMap::identity(2), unit, unit), DimensionError);
}

TEST_CASE("gridfn properness and off-grid extension") {
    LatticeGrid g = LatticeGrid::line(Rat(0), Rat(1), -1, 1);
    std::vector<ExtReal> all_inf(3, ExtReal::infinity());
    CHECK_THROWS_AS(GridFn(g, all_inf), ImproperError);

    GridFn f(g, {ExtReal::infinity(), ExtReal::finite(0), ExtReal::infinity()});
    CHECK(f.eval_ext({Rat(0)}).value() == 0);
    CHECK(f.eval_ext({Rat(5)}).is_infinite());
    CHECK(f.eval_ext({Rat(1, 2)}).is_infinite());
    CHECK(f.finite_count() == 1);
}

TEST_CASE("polytope support and exact membership") {
    Polytope K = Polytope::interval(Rat(-1), Rat(1));
    CHECK(K.support({Rat(3)}) == 3);
    CHECK(K.support({Rat(-2)}) == 2);
    CHECK(K.contains({Rat(1, 2)}));
    CHECK(!K.contains({Rat(3, 2)}));

    // support values are invariant under duplicating a vertex
    Polytope K2(1, {{Rat(-1)}, {Rat(1)}, {Rat(1)}});
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> s(-5, 5);
    for (int i = 0; i < 50; ++i) {
        RatVec dir{Rat(s(rng))};
        CHECK(K.support(dir) == K2.support(dir));
    }

    Polytope tri(2, {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
    CHECK(tri.contains({Rat(1, 4), Rat(1, 4)}));
    CHECK(!tri.contains({Rat(3, 4), Rat(3, 4)}));
    CHECK(tri.negated().contains({Rat(-1, 4), Rat(-1, 4)}));
}

TEST_CASE("exact lp solves small instances") {
    // x + y = 2, x - y = 0 with x,y >= 0 -> x = y = 1
    std::vector<RatVec> rows{{Rat(1), Rat(1)}, {Rat(1), Rat(-1)}};
    LpResult r = solve_eq_lp(rows, {Rat(2), Rat(0)}, {Rat(1), Rat(0)});
    REQUIRE(r.status == LpResult::Status::Optimal);
    CHECK(r.solution[0] == 1);
    CHECK(r.solution[1] == 1);
    CHECK(r.objective == 1);

    // x = -1 with x >= 0 is infeasible; Farkas certificate must verify
    LpResult inf = lp_feasible({{Rat(1)}}, {Rat(-1)});
    REQUIRE(inf.status == LpResult::Status::Infeasible);
    CHECK(inf.farkas.size() == 1);
    CHECK(inf.farkas[0] * Rat(-1) > 0);
    CHECK(inf.farkas[0] * Rat(1) <= 0);

    // min -x s.t. x - y = 0 is unbounded
    LpResult ub = solve_eq_lp({{Rat(1), Rat(-1)}}, {Rat(0)}, {Rat(-1), Rat(0)});
    CHECK(ub.status == LpResult::Status::Unbounded);
}

TEST_CASE("lp randomized feasibility agrees with direct membership") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> coord(-3, 3);
    for (int trial = 0; trial < 200; ++trial) {
        int d = 1 + static_cast<int>(rng() % 3);
        int nv = 1 + static_cast<int>(rng() % 4);
        std::vector<RatVec> verts;
        for (int i = 0; i < nv; ++i) {
            RatVec v(d);
            for (int a = 0; a < d; ++a) v[a] = coord(rng);
            verts.push_back(v);
        }
        Polytope K(d, verts);
        // a random convex combination must be inside
        RatVec lam(nv);
        Rat tot = 0;
        for (int i = 0; i < nv; ++i) {
            lam[i] = Rat(rng() % 5);
            tot += lam[i];
        }
        if (tot == 0) continue;
        RatVec p(d, Rat(0));
        for (int i = 0; i < nv; ++i)
            for (int a = 0; a < d; ++a) p[a] += lam[i] * verts[i][a] / tot;
        CHECK(K.contains(p));
        // far outside the vertex box must be outside
        RatVec far(d, Rat(100));
        bool far_is_vertex_hull = K.contains(far);
        Rat maxc = 0;
        for (const auto& v : verts)
            for (const auto& c : v)
                if (abs(c) > maxc) maxc = abs(c);
        CHECK((maxc >= 100 || !far_is_vertex_hull));
    }
}
