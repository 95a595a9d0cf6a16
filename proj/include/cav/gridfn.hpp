#pragma once

#include <string>
#include <vector>

#include "cav/extreal.hpp"
#include "cav/grid.hpp"

namespace cav {

// Extended-real function sampled on a lattice grid, extended by +inf off the
// grid. Proper by construction: at least one value must be finite.
class GridFn {
public:
    GridFn(LatticeGrid grid, std::vector<ExtReal> values, std::string label = "");

    const LatticeGrid& grid() const { return grid_; }
    const std::string& label() const { return label_; }
    const std::vector<ExtReal>& values() const { return values_; }

    ExtReal at(std::size_t flat) const { return values_[flat]; }

    // +inf for off-lattice or out-of-extent points.
    ExtReal eval_ext(const RatVec& p) const;

    std::size_t finite_count() const;

    bool same_values(const GridFn& o) const { return grid_ == o.grid_ && values_ == o.values_; }

private:
    LatticeGrid grid_;
    std::vector<ExtReal> values_;
    std::string label_;
};

// Swaps the first dleft axes with the rest: g(a, b) -> g'(b, a).
GridFn swap_blocks(const GridFn& f, int dleft);

} // namespace cav
