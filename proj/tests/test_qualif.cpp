#include <doctest.h>

#include <random>

#include "cav/qualif.hpp"
#include "helpers.hpp"

using namespace cav;
using namespace cavtest;

namespace {

// Certificates must re-verify by direct substitution.
void verify_certificates(const QCResult& r) {
    if (r.is_subspace) {
        REQUIRE(r.combos.size() == r.generators.size());
        for (std::size_t j = 0; j < r.generators.size(); ++j) {
            RatVec acc(r.generators[j].size(), Rat(0));
            for (std::size_t i = 0; i < r.generators.size(); ++i) {
                REQUIRE(r.combos[j][i] >= 0);
                acc = vec_add(acc, vec_scale(r.combos[j][i], r.generators[i]));
            }
            REQUIRE(acc == vec_neg(r.generators[j]));
        }
    } else {
        REQUIRE(r.failing.has_value());
        for (const auto& d : r.generators) REQUIRE(dot(r.separating, d) <= 0);
        REQUIRE(dot(r.separating, r.generators[*r.failing]) < 0);
    }
}

// Enumerates nonnegative rational combinations on a small mesh; when it finds
// a combination for every -d it proves the subspace property.
bool brute_force_subspace(const std::vector<RatVec>& D) {
    const std::size_t n = D.size();
    std::vector<Rat> mesh{Rat(0), Rat(1, 2), Rat(1), Rat(3, 2), Rat(2), Rat(3)};
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        RatVec target = vec_neg(D[j]);
        bool found = false;
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
            RatVec acc(D[0].size(), Rat(0));
            for (std::size_t i = 0; i < n; ++i) acc = vec_add(acc, vec_scale(mesh[idx[i]], D[i]));
            if (acc == target) {
                found = true;
                break;
            }
            std::size_t k = 0;
            while (k < n && ++idx[k] == mesh.size()) idx[k++] = 0;
            if (k == n) break;
        }
        if (!found) return false;
    }
    return true;
}

} // namespace

TEST_CASE("dom_project extracts finite blocks") {
    LatticeGrid g2({Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {{-1, 1}, {-1, 1}});
    std::vector<double> v(9, kInf);
    v[4] = 0.0; // the origin of the 3x3 grid
    GridFn ind = mk(g2, v);
    auto p = dom_project(ind, first_axes(1));
    REQUIRE(p.size() == 1);
    CHECK(p[0] == RatVec{Rat(0)});

    GridFn full = mk(g2, std::vector<double>(9, 1.0));
    CHECK(dom_project(full, first_axes(1)).size() == 3);
    CHECK(dom_project(full, axes_range(1, 1)).size() == 3);

    std::vector<double> row(9, kInf);
    row[6] = row[7] = row[8] = 2.0; // x = 1 only
    auto pr = dom_project(mk(g2, row), first_axes(1));
    REQUIRE(pr.size() == 1);
    CHECK(pr[0] == RatVec{Rat(1)});
}

TEST_CASE("cone_is_subspace on the worked instances") {
    QCResult sym = cone_is_subspace({{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}});
    CHECK(sym.is_subspace);
    REQUIRE(sym.basis.size() == 1);
    CHECK(sym.basis[0] == RatVec{Rat(1), Rat(0)});
    verify_certificates(sym);

    QCResult ray = cone_is_subspace({{Rat(1), Rat(0)}});
    CHECK(!ray.is_subspace);
    verify_certificates(ray);

    QCResult full = cone_is_subspace({{Rat(1), Rat(1)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(-1)}});
    CHECK(full.is_subspace);
    CHECK(full.basis.size() == 2);
    verify_certificates(full);
}

TEST_CASE("cone_is_subspace agrees with the brute-force oracle") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> coord(-2, 2);
    int confirmed = 0;
    for (int t = 0; t < 400; ++t) {
        int d = 1 + static_cast<int>(rng() % 3);
        int n = 1 + static_cast<int>(rng() % 4);
        std::vector<RatVec> D;
        for (int i = 0; i < n; ++i) {
            RatVec v(d);
            for (int a = 0; a < d; ++a) v[a] = coord(rng);
            D.push_back(v);
        }
        QCResult r = cone_is_subspace(D);
        verify_certificates(r);
        if (brute_force_subspace(D)) {
            CHECK(r.is_subspace);
            ++confirmed;
        }
        // the separating certificate refutes membership independently
        if (!r.is_subspace) CHECK(!brute_force_subspace(D));
    }
    CHECK(confirmed > 20); // the mesh oracle certifies a healthy share
}

TEST_CASE("subspace verdict invariant under scaling and augmenting") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> coord(-2, 2);
    for (int t = 0; t < 100; ++t) {
        int d = 1 + static_cast<int>(rng() % 2);
        int n = 1 + static_cast<int>(rng() % 3);
        std::vector<RatVec> D;
        for (int i = 0; i < n; ++i) {
            RatVec v(d);
            for (int a = 0; a < d; ++a) v[a] = coord(rng);
            D.push_back(v);
        }
        bool base = cone_is_subspace(D).is_subspace;

        auto scaled = D;
        scaled[rng() % n] = vec_scale(Rat(3, 2), scaled[rng() % n]);
        // scaling one generator positively cannot change the verdict
        std::vector<RatVec> scaled2 = D;
        scaled2[0] = vec_scale(Rat(5, 2), D[0]);
        CHECK(cone_is_subspace(scaled2).is_subspace == base);

        // appending a nonnegative combination cannot change the verdict
        RatVec comb(d, Rat(0));
        for (int i = 0; i < n; ++i) comb = vec_add(comb, vec_scale(Rat(rng() % 3), D[i]));
        auto augmented = D;
        augmented.push_back(comb);
        CHECK(cone_is_subspace(augmented).is_subspace == base);
    }
}

TEST_CASE("cone size caps enforced") {
    std::vector<RatVec> big(65, RatVec{Rat(1)});
    CHECK_THROWS_AS(cone_is_subspace(big), SizeCapError);
    CHECK_THROWS_AS(cone_is_subspace({RatVec(9, Rat(1))}), SizeCapError);
}

TEST_CASE("sandwich_check verifies the containments and span equality") {
    // trivial {0} sandwich
    SandwichResult triv = sandwich_check({RatVec{Rat(0)}}, {RatVec{Rat(0)}}, {RatVec{Rat(0)}});
    CHECK(triv.ok);

    // x-axis sandwich in the plane
    std::vector<RatVec> inner{{Rat(1), Rat(0)}, {Rat(-2), Rat(0)}};
    std::vector<RatVec> h{{Rat(1), Rat(0)}};
    std::vector<RatVec> outer{{Rat(2), Rat(0)}, {Rat(-1), Rat(0)}};
    SandwichResult ax = sandwich_check(inner, h, outer);
    CHECK(ax.ok);

    // inner point off H fails the hypothesis
    SandwichResult off = sandwich_check({{Rat(0), Rat(1)}}, h, outer);
    CHECK(!off.inner_in_H);
    CHECK(!off.ok);

    // outer cone that is a strictly larger subspace than H fails the conclusion
    std::vector<RatVec> whole{{Rat(1), Rat(0)}, {Rat(-1), Rat(0)}, {Rat(0), Rat(1)}, {Rat(0), Rat(-1)}};
    SandwichResult big = sandwich_check(inner, h, whole);
    CHECK(big.hypothesis_ok);
    CHECK(!big.conclusion_ok);
}

TEST_CASE("closure containment with one-step tolerance") {
    std::vector<RatVec> inner{{Rat(0)}, {Rat(1)}};
    std::vector<RatVec> cover{{Rat(0)}, {Rat(3, 4)}};
    ContainmentResult near = closure_containment(inner, cover, 0.5);
    CHECK(near.ok);
    CHECK(near.worst == doctest::Approx(0.25));
    ContainmentResult far = closure_containment({{Rat(5)}}, cover, 0.5);
    CHECK(!far.ok);
}
