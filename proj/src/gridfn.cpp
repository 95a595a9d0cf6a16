#include "cav/gridfn.hpp"

#include "cav/errors.hpp"

namespace cav {

GridFn::GridFn(LatticeGrid grid, std::vector<ExtReal> values, std::string label)
    : grid_(std::move(grid)), values_(std::move(values)), label_(std::move(label)) {
    if (values_.size() != grid_.size())
        throw DimensionError("GridFn: value count does not match grid size (" + label_ + ")");
    bool any_finite = false;
    for (const auto& v : values_)
        if (v.is_finite()) {
            any_finite = true;
            break;
        }
    if (!any_finite) throw ImproperError("GridFn: improper (all values +inf): " + label_);
}

ExtReal GridFn::eval_ext(const RatVec& p) const {
    auto idx = grid_.flat_index(p);
    if (!idx) return ExtReal::infinity();
    return values_[*idx];
}

std::size_t GridFn::finite_count() const {
    std::size_t n = 0;
    for (const auto& v : values_)
        if (v.is_finite()) ++n;
    return n;
}

GridFn swap_blocks(const GridFn& f, int dleft) {
    const LatticeGrid& g = f.grid();
    if (dleft <= 0 || dleft >= g.dim()) throw DimensionError("swap_blocks: invalid split");
    LatticeGrid left = block_grid(g, 0, dleft);
    LatticeGrid right = block_grid(g, dleft, g.dim() - dleft);
    LatticeGrid swapped = product(right, left);
    const std::size_t nl = left.size(), nr = right.size();
    std::vector<ExtReal> vals(nl * nr);
    for (std::size_t i = 0; i < nl; ++i)
        for (std::size_t j = 0; j < nr; ++j) vals[j * nl + i] = f.at(i * nr + j);
    return GridFn(swapped, std::move(vals), f.label());
}

} // namespace cav
