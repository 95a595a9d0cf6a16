#include <doctest.h>

#include <random>

#include "cav/conjugate.hpp"
#include "cav/monops.hpp"
#include "helpers.hpp"

using namespace cav;
using namespace cavtest;

namespace {

OperatorGraph identity_graph(long lo, long hi, Rat step = Rat(1)) {
    std::vector<std::pair<RatVec, RatVec>> p;
    for (long k = lo; k <= hi; ++k) p.push_back({{step * k}, {step * k}});
    return OperatorGraph::from_pairs(1, std::move(p));
}

OperatorGraph random_monotone(std::mt19937_64& rng, int dim) {
    if (dim == 1) {
        // sorted x against sorted s is monotone in one dimension
        int n = 2 + static_cast<int>(rng() % 5);
        std::vector<Rat> xs, ss;
        for (int i = 0; i < n; ++i) {
            xs.push_back(Rat(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2)));
            ss.push_back(Rat(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2)));
        }
        std::sort(xs.begin(), xs.end());
        std::sort(ss.begin(), ss.end());
        std::vector<std::pair<RatVec, RatVec>> p;
        for (int i = 0; i < n; ++i) p.push_back({{xs[i]}, {ss[i]}});
        return OperatorGraph::from_pairs(1, std::move(p));
    }
    // linear PSD-diagonal operator graphs in higher dimension
    RatVec diag(dim);
    for (auto& d : diag) d = Rat(static_cast<int>(rng() % 3));
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::pair<RatVec, RatVec>> p;
    for (int i = 0; i < n; ++i) {
        RatVec x(dim), s(dim);
        for (int a = 0; a < dim; ++a) {
            x[a] = Rat(static_cast<int>(rng() % 7) - 3);
            s[a] = diag[a] * x[a];
        }
        p.push_back({x, s});
    }
    return OperatorGraph::from_pairs(dim, std::move(p));
}

OperatorGraph random_graph(std::mt19937_64& rng, int dim) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::pair<RatVec, RatVec>> p;
    for (int i = 0; i < n; ++i) {
        RatVec x(dim), s(dim);
        for (int a = 0; a < dim; ++a) {
            x[a] = Rat(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2));
            s[a] = Rat(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 2));
        }
        p.push_back({x, s});
    }
    return OperatorGraph::from_pairs(dim, std::move(p));
}

} // namespace

TEST_CASE("monotonicity detection with exact arithmetic") {
    CHECK(is_monotone(identity_graph(-3, 3)).monotone);

    OperatorGraph bad = OperatorGraph::from_pairs(1, {{{Rat(0)}, {Rat(1)}}, {{Rat(1)}, {Rat(0)}}});
    MonotoneCheck mc = is_monotone(bad);
    CHECK(!mc.monotone);
    REQUIRE(mc.violating.has_value());
}

TEST_CASE("parallel sum of identity graphs is the half map on even points") {
    OperatorGraph id(identity_graph(-2, 2));
    OperatorGraph par = op_parallel(id, id);
    OperatorGraph expect = OperatorGraph::from_pairs(1, {{{Rat(-4)}, {Rat(-2)}},
                                                         {{Rat(-2)}, {Rat(-1)}},
                                                         {{Rat(0)}, {Rat(0)}},
                                                         {{Rat(2)}, {Rat(1)}},
                                                         {{Rat(4)}, {Rat(2)}}});
    CHECK(par == expect);
}

TEST_CASE("inverse is an involution and the zero operator is a sum identity") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 50; ++t) {
        OperatorGraph g = random_graph(rng, 1 + static_cast<int>(rng() % 3));
        CHECK(op_inverse(op_inverse(g)) == g);
    }

    OperatorGraph s = identity_graph(-2, 2);
    std::vector<std::pair<RatVec, RatVec>> zp;
    for (long k = -2; k <= 2; ++k) zp.push_back({{Rat(k)}, {Rat(0)}});
    OperatorGraph zero = OperatorGraph::from_pairs(1, std::move(zp));
    CHECK(op_sum(s, zero) == s);
}

TEST_CASE("parallel-sum identity holds exactly on randomized graphs") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 120; ++t) {
        int dim = 1 + static_cast<int>(rng() % 3);
        OperatorGraph S = random_graph(rng, dim), T = random_graph(rng, dim);
        OperatorGraph direct = op_parallel(S, T);
        OperatorGraph via = op_inverse(op_sum(op_inverse(S), op_inverse(T)));
        CHECK(direct == via);
    }
}

TEST_CASE("algebra modes preserve monotonicity of monotone inputs") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 80; ++t) {
        int dim = 1 + static_cast<int>(rng() % 2);
        OperatorGraph S = random_monotone(rng, dim), T = random_monotone(rng, dim);
        CHECK(is_monotone(op_sum(S, T)).monotone);
        CHECK(is_monotone(op_inverse(S)).monotone);
        CHECK(is_monotone(op_parallel(S, T)).monotone);
        LatticeGrid xg = dim == 1 ? line(-2, 2)
                                  : LatticeGrid({Rat(0), Rat(0)}, {Rat(1), Rat(1)},
                                                {{-1, 1}, {-1, 1}});
        RatVec entries;
        for (int i = 0; i < dim * dim; ++i)
            entries.push_back(Rat(static_cast<int>(rng() % 3) - 1));
        RatLinMap A(dim, dim, entries);
        CHECK(is_monotone(conj_transform(S, A, xg)).monotone);
    }
}

TEST_CASE("cc_check on the worked instances") {
    OperatorGraph id = identity_graph(-2, 2);
    CcInstance star = CcInstance::star({Rat(0)}, Polytope::interval(Rat(-1), Rat(1)));
    CcVerdict v = cc_check(id, star);
    CHECK(v.hypothesis_holds);
    CHECK(v.conclusion_holds);

    // S undefined at y: hypothesis can hold while the conclusion fails
    OperatorGraph offset = OperatorGraph::from_pairs(1, {{{Rat(1)}, {Rat(0)}}});
    CcVerdict v2 = cc_check(offset, star);
    CHECK(v2.hypothesis_holds);
    CHECK(!v2.conclusion_holds);

    // hypothesis failure: a graph point pointing away from every y* in C
    OperatorGraph bad = OperatorGraph::from_pairs(1, {{{Rat(1)}, {Rat(-5)}}});
    CcVerdict v3 = cc_check(bad, star);
    CHECK(!v3.hypothesis_holds);

    CcInstance space = CcInstance::space(Polytope::interval(Rat(-1), Rat(1)), {Rat(0)});
    CcVerdict v4 = cc_check(id, space);
    CHECK(v4.hypothesis_holds);
    CHECK(v4.conclusion_holds);
}

TEST_CASE("grid maximality oracle") {
    LatticeGrid e = line(-2, 2);
    // subdifferential graph of 2|x|: the vertical fan at 0 plus steep arms
    // rejects every window candidate
    std::vector<std::pair<RatVec, RatVec>> vp;
    for (long k = -2; k <= 2; ++k)
        if (k != 0) vp.push_back({{Rat(k)}, {Rat(k < 0 ? -2 : 2)}});
    for (long s = -2; s <= 2; ++s) vp.push_back({{Rat(0)}, {Rat(s)}});
    OperatorGraph vee = OperatorGraph::from_pairs(1, std::move(vp));
    CHECK(grid_maximal(vee, e, e).maximal);

    // the zero operator's graph admits additions at the window corners
    std::vector<std::pair<RatVec, RatVec>> zp;
    for (long k = -2; k <= 2; ++k) zp.push_back({{Rat(k)}, {Rat(0)}});
    OperatorGraph zero = OperatorGraph::from_pairs(1, std::move(zp));
    MaximalityResult mr = grid_maximal(zero, e, e);
    CHECK(!mr.maximal);
    CHECK(mr.addable.has_value());

    // the bare identity graph admits additions on a coarse window
    MaximalityResult mi = grid_maximal(identity_graph(-1, 1), line(-1, 1), line(-1, 1));
    CHECK(!mi.maximal);
    CHECK(mi.addable.has_value());
}

TEST_CASE("theorem 11 harness over steep-vee and zero operators") {
    LatticeGrid e = line(-2, 2);
    LatticeGrid es = line(-2, 2);

    // S = subdifferential graph of 2|x| truncated to the window: vertical fan
    // at the origin, steep arms elsewhere
    std::vector<std::pair<RatVec, RatVec>> sp;
    for (long k = -2; k <= 2; ++k) sp.push_back({{Rat(k)}, {Rat(k < 0 ? -2 : (k > 0 ? 2 : 0))}});
    for (long s = -2; s <= 2; ++s) sp.push_back({{Rat(0)}, {Rat(s)}});
    OperatorGraph vee = OperatorGraph::from_pairs(1, std::move(sp));
    REQUIRE(is_monotone(vee).monotone);

    std::vector<CcInstance> instances;
    instances.push_back(CcInstance::star({Rat(0)}, Polytope::interval(Rat(-1), Rat(1))));
    instances.push_back(CcInstance::star({Rat(1)}, Polytope::interval(Rat(1), Rat(2))));
    instances.push_back(CcInstance::space(Polytope::interval(Rat(-1), Rat(1)), {Rat(0)}));

    HarnessReport rep = theorem11_harness(vee, instances, e, es);
    CHECK(rep.counterexample_free);
    bool any_checked = false;
    for (const auto& iv : rep.instances)
        any_checked |= iv.outcome == InstanceVerdict::Outcome::Ok;
    CHECK(any_checked);

    // deliberately truncated operator: composition fails grid-maximality and
    // the instance is skipped rather than judged
    OperatorGraph trunc = OperatorGraph::from_pairs(1, {{{Rat(2)}, {Rat(2)}}});
    HarnessReport rep2 = theorem11_harness(trunc, {instances[0]}, e, es);
    REQUIRE(rep2.instances.size() == 1);
    CHECK(rep2.instances[0].outcome == InstanceVerdict::Outcome::Skipped);
}

TEST_CASE("theorem 15 variant a on separable half-squares with identity map") {
    LatticeGrid e = line(-4, 4, Rat(1, 2)); // {-2..2}
    LatticeGrid es = line(-8, 8, Rat(1, 2)); // {-4..4}
    GridFn phi = mk(e, [&] {
        std::vector<double> v;
        for (std::size_t i = 0; i < e.size(); ++i) {
            double x = to_double(e.point(i)[0]);
            v.push_back(0.5 * x * x);
        }
        return v;
    }());
    ReprFn f = ReprFn::separable(phi, es);
    T15Report rep = theorem15_verify(f, f, RatLinMap::identity(1), 'a');
    CHECK(rep.applicable);
    CHECK(rep.graphs_equal);
    CHECK(rep.strongly_repr);
    CHECK(rep.ok);
    // M f + M g is the doubling graph on representable points
    for (const auto& [x, s] : rep.combinatorial.pairs) CHECK(s[0] == 2 * x[0]);
}

TEST_CASE("theorem 15 variants b and c on separable half-squares") {
    LatticeGrid e = line(-4, 4, Rat(1, 2));
    LatticeGrid es = line(-2, 2, Rat(1, 2));
    GridFn phi = mk(e, [&] {
        std::vector<double> v;
        for (std::size_t i = 0; i < e.size(); ++i) {
            double x = to_double(e.point(i)[0]);
            v.push_back(0.5 * x * x);
        }
        return v;
    }());
    ReprFn f = ReprFn::separable(phi, es);
    for (char variant : {'b', 'c'}) {
        T15Report rep = theorem15_verify(f, f, RatLinMap::identity(1), variant);
        CHECK(rep.applicable);
        CHECK(rep.graphs_equal);
        CHECK(rep.strongly_repr);
        for (const auto& [x, s] : rep.combinatorial.pairs) CHECK(x[0] == 2 * s[0]);
    }
}

TEST_CASE("theorem 15 reports inapplicability on disjoint domains") {
    LatticeGrid e = line(-1, 1);
    std::vector<double> left(9, kInf), right(9, kInf);
    // dom f = {-1} x E*, dom g = {1} x E*
    for (int is = 0; is < 3; ++is) {
        left[0 * 3 + is] = 0.0;
        right[2 * 3 + is] = 0.0;
    }
    ReprFn f = ReprFn::sampled(mk(product(e, e), left), 1);
    ReprFn g = ReprFn::sampled(mk(product(e, e), right), 1);
    T15Report rep = theorem15_verify(f, g, RatLinMap::identity(1), 'a');
    CHECK(!rep.applicable);
    CHECK(!rep.qualification.is_subspace);
}

TEST_CASE("theorem 17 harness on separable and closed-form instances") {
    LatticeGrid e = line(-2, 2);
    GridFn phi = mk(e, {2.0, 0.5, 0.0, 0.5, 2.0});
    ReprFn f = ReprFn::separable(phi, e);

    std::vector<CcInstance> instances;
    instances.push_back(CcInstance::star({Rat(0)}, Polytope::interval(Rat(-1), Rat(1))));
    instances.push_back(CcInstance::space(Polytope::interval(Rat(-1), Rat(1)), {Rat(0)}));
    instances.push_back(CcInstance::star({Rat(0)}, Polytope::point({Rat(-5)}))); // vacuous

    HarnessReport rep = theorem17_harness(f, instances);
    CHECK(rep.counterexample_free);
    CHECK(rep.instances[0].outcome == InstanceVerdict::Outcome::Ok);
    CHECK(rep.instances[1].outcome == InstanceVerdict::Outcome::Ok);
    CHECK(rep.instances[2].outcome == InstanceVerdict::Outcome::Vacuous);

    ReprFn g7 = ReprFn::example7({Rat(0)}, Polytope::interval(Rat(-1), Rat(1)), e, e);
    HarnessReport rep7 = theorem17_harness(g7, {instances[0], instances[1]});
    CHECK(rep7.counterexample_free);
}

TEST_CASE("op_algebra dispatch covers every mode") {
    OperatorGraph id = identity_graph(-1, 1);
    CHECK(op_algebra(id, nullptr, OpMode::Inverse) == id);
    CHECK(op_algebra(id, &id, OpMode::Sum).size() == 3);
    CHECK(op_algebra(id, &id, OpMode::Parallel).size() == 3);
    RatLinMap two = RatLinMap::scalar(Rat(2));
    LatticeGrid e = line(-1, 1);
    OperatorGraph ct = op_algebra(identity_graph(-2, 2), nullptr, OpMode::ConjTransform, &two, &e);
    // x -> 2 * (2x) = 4x on points with 2x in the source graph
    for (const auto& [x, s] : ct.pairs) CHECK(s[0] == 4 * x[0]);
    CHECK_THROWS_AS(op_algebra(id, nullptr, OpMode::Sum), ValidationError);
}

TEST_CASE("theorem 15 variant c with an example-6 parallel partner") {
    LatticeGrid e = line(-4, 4, Rat(1, 2));   // [-2, 2]
    LatticeGrid es = line(-2, 2, Rat(1, 2));  // [-1, 1]
    GridFn phi = mk(e, [&] {
        std::vector<double> v;
        for (std::size_t i = 0; i < e.size(); ++i) {
            double x = to_double(e.point(i)[0]);
            v.push_back(0.5 * x * x);
        }
        return v;
    }());
    ReprFn f = ReprFn::separable(phi, es);
    ReprFn g = ReprFn::example6(Polytope::interval(Rat(-1), Rat(1)), {Rat(0)}, e, es);
    T15Report rep = theorem15_verify(f, g, RatLinMap::identity(1), 'c');
    CHECK(rep.applicable);
    CHECK(rep.graphs_equal);
    CHECK(rep.strongly_repr);
    // the parallel sum of the identity subdifferential with the normal cone:
    // horizontal segment at level 0 plus shifted arms
    OperatorGraph expect_part = OperatorGraph::from_pairs(
        1, {{{Rat(0)}, {Rat(0)}}, {{Rat(1)}, {Rat(0)}}, {{Rat(-1)}, {Rat(0)}},
            {{Rat(3, 2)}, {Rat(1, 2)}}, {{Rat(2)}, {Rat(1)}}});
    for (const auto& p : expect_part.pairs) {
        bool found = false;
        for (const auto& q : rep.combinatorial.pairs) found |= q == p;
        CHECK(found);
    }
}
