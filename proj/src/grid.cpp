#include "cav/grid.hpp"

#include "cav/errors.hpp"

namespace cav {

LatticeGrid::LatticeGrid(RatVec origin, RatVec step, std::vector<AxisExtent> extent)
    : origin_(std::move(origin)), step_(std::move(step)), extent_(std::move(extent)) {
    if (origin_.empty()) throw DimensionError("LatticeGrid: dimension must be positive");
    if (step_.size() != origin_.size() || extent_.size() != origin_.size())
        throw DimensionError("LatticeGrid: origin/step/extent sizes disagree");
    size_ = 1;
    for (std::size_t a = 0; a < origin_.size(); ++a) {
        if (step_[a] <= 0) throw ValidationError("LatticeGrid: step must be positive");
        if (extent_[a].hi < extent_[a].lo) throw ValidationError("LatticeGrid: empty extent");
        size_ *= static_cast<std::size_t>(extent_[a].size());
    }
}

LatticeGrid LatticeGrid::line(const Rat& origin, const Rat& step, long lo, long hi) {
    return LatticeGrid({origin}, {step}, {AxisExtent{lo, hi}});
}

RatVec LatticeGrid::point(std::size_t flat) const {
    std::vector<long> k = multi_index(flat);
    RatVec p(origin_.size());
    for (std::size_t a = 0; a < p.size(); ++a) p[a] = origin_[a] + step_[a] * k[a];
    return p;
}

std::vector<long> LatticeGrid::multi_index(std::size_t flat) const {
    std::vector<long> k(origin_.size());
    for (int a = dim() - 1; a >= 0; --a) {
        long n = extent_[a].size();
        k[a] = extent_[a].lo + static_cast<long>(flat % n);
        flat /= n;
    }
    return k;
}

std::size_t LatticeGrid::flat_of_multi(const std::vector<long>& k) const {
    std::size_t flat = 0;
    for (int a = 0; a < dim(); ++a) flat = flat * extent_[a].size() + (k[a] - extent_[a].lo);
    return flat;
}

std::optional<std::vector<long>> LatticeGrid::lattice_index(const RatVec& p) const {
    if (static_cast<int>(p.size()) != dim()) throw DimensionError("lattice_index: dim mismatch");
    std::vector<long> k(p.size());
    for (int a = 0; a < dim(); ++a) {
        Rat q = (p[a] - origin_[a]) / step_[a];
        if (!is_integer(q)) return std::nullopt;
        BigInt n = numerator(q);
        k[a] = n.convert_to<long>();
    }
    return k;
}

bool LatticeGrid::in_extent(const std::vector<long>& k) const {
    for (int a = 0; a < dim(); ++a)
        if (k[a] < extent_[a].lo || k[a] > extent_[a].hi) return false;
    return true;
}

std::optional<std::size_t> LatticeGrid::flat_index(const RatVec& p) const {
    auto k = lattice_index(p);
    if (!k || !in_extent(*k)) return std::nullopt;
    return flat_of_multi(*k);
}

std::vector<double> LatticeGrid::axis_coords_dbl(int a) const {
    std::vector<double> c;
    c.reserve(axis_size(a));
    for (long k = extent_[a].lo; k <= extent_[a].hi; ++k) c.push_back(to_double(coord(a, k)));
    return c;
}

RatVec LatticeGrid::axis_coords(int a) const {
    RatVec c;
    c.reserve(axis_size(a));
    for (long k = extent_[a].lo; k <= extent_[a].hi; ++k) c.push_back(coord(a, k));
    return c;
}

LatticeGrid product(const LatticeGrid& a, const LatticeGrid& b) {
    RatVec origin = concat(a.origin(), b.origin());
    RatVec step = concat(a.step(), b.step());
    std::vector<AxisExtent> ext = a.extent();
    ext.insert(ext.end(), b.extent().begin(), b.extent().end());
    return LatticeGrid(std::move(origin), std::move(step), std::move(ext));
}

std::pair<RatVec, RatVec> split_point(const RatVec& p, int dleft) {
    RatVec l(p.begin(), p.begin() + dleft);
    RatVec r(p.begin() + dleft, p.end());
    return {std::move(l), std::move(r)};
}

LatticeGrid block_grid(const LatticeGrid& g, int from, int count) {
    if (from < 0 || count <= 0 || from + count > g.dim())
        throw DimensionError("block_grid: invalid block");
    RatVec origin(g.origin().begin() + from, g.origin().begin() + from + count);
    RatVec step(g.step().begin() + from, g.step().begin() + from + count);
    std::vector<AxisExtent> ext(g.extent().begin() + from, g.extent().begin() + from + count);
    return LatticeGrid(std::move(origin), std::move(step), std::move(ext));
}

} // namespace cav
