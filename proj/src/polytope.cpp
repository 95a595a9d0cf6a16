#include "cav/polytope.hpp"

#include "cav/errors.hpp"
#include "cav/ratlp.hpp"

namespace cav {

Polytope::Polytope(int dim, std::vector<RatVec> vertices) : dim_(dim), verts_(std::move(vertices)) {
    if (dim_ <= 0) throw DimensionError("Polytope: dimension must be positive");
    if (verts_.empty()) throw ValidationError("Polytope: vertex list must be nonempty");
    for (const auto& v : verts_)
        if (static_cast<int>(v.size()) != dim_)
            throw DimensionError("Polytope: vertex dimension mismatch");
}

Polytope Polytope::point(const RatVec& p) { return Polytope(static_cast<int>(p.size()), {p}); }

Polytope Polytope::interval(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw ValidationError("Polytope::interval: lo > hi");
    if (lo == hi) return Polytope(1, {{lo}});
    return Polytope(1, {{lo}, {hi}});
}

Polytope Polytope::box(const RatVec& lo, const RatVec& hi) {
    int d = static_cast<int>(lo.size());
    if (hi.size() != lo.size()) throw DimensionError("Polytope::box: bound sizes disagree");
    std::vector<RatVec> verts;
    RatVec cur(d);
    // 2^d corners (duplicates collapse when lo==hi on an axis are harmless).
    for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
        for (int a = 0; a < d; ++a) cur[a] = (mask >> a) & 1 ? hi[a] : lo[a];
        verts.push_back(cur);
    }
    return Polytope(d, std::move(verts));
}

Rat Polytope::support(const RatVec& s) const {
    Rat best = dot(verts_[0], s);
    for (std::size_t i = 1; i < verts_.size(); ++i) {
        Rat v = dot(verts_[i], s);
        if (v > best) best = v;
    }
    return best;
}

std::size_t Polytope::support_argmax(const RatVec& s) const {
    std::size_t arg = 0;
    Rat best = dot(verts_[0], s);
    for (std::size_t i = 1; i < verts_.size(); ++i) {
        Rat v = dot(verts_[i], s);
        if (v > best) {
            best = v;
            arg = i;
        }
    }
    return arg;
}

Rat Polytope::min_pairing(const RatVec& s) const {
    Rat best = dot(verts_[0], s);
    for (std::size_t i = 1; i < verts_.size(); ++i) {
        Rat v = dot(verts_[i], s);
        if (v < best) best = v;
    }
    return best;
}

bool Polytope::contains(const RatVec& p) const {
    if (static_cast<int>(p.size()) != dim_) throw DimensionError("Polytope::contains: dim mismatch");
    if (dim_ == 1) {
        Rat lo = verts_[0][0], hi = verts_[0][0];
        for (const auto& v : verts_) {
            if (v[0] < lo) lo = v[0];
            if (v[0] > hi) hi = v[0];
        }
        return lo <= p[0] && p[0] <= hi;
    }
    // lambda >= 0, sum lambda = 1, sum lambda v_i = p.
    std::vector<RatVec> rows(dim_ + 1, RatVec(verts_.size(), Rat(0)));
    RatVec b(dim_ + 1, Rat(0));
    for (std::size_t j = 0; j < verts_.size(); ++j) {
        for (int i = 0; i < dim_; ++i) rows[i][j] = verts_[j][i];
        rows[dim_][j] = 1;
    }
    for (int i = 0; i < dim_; ++i) b[i] = p[i];
    b[dim_] = 1;
    return lp_feasible(rows, b).status == LpResult::Status::Optimal;
}

Polytope Polytope::negated() const {
    std::vector<RatVec> verts;
    verts.reserve(verts_.size());
    for (const auto& v : verts_) verts.push_back(vec_neg(v));
    return Polytope(dim_, std::move(verts));
}

} // namespace cav
