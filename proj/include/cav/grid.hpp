#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cav/rational.hpp"

namespace cav {

struct AxisExtent {
    long lo = 0;
    long hi = 0; // inclusive
    long size() const { return hi - lo + 1; }
    bool operator==(const AxisExtent& o) const { return lo == o.lo && hi == o.hi; }
};

// Rectangular lattice: points are origin + step∘k for integer multi-indices k
// within the extent. Enumeration is row-major with axis 0 most significant and
// indices increasing, so per-axis coordinates are ascending.
class LatticeGrid {
public:
    LatticeGrid(RatVec origin, RatVec step, std::vector<AxisExtent> extent);

    static LatticeGrid line(const Rat& origin, const Rat& step, long lo, long hi);

    int dim() const { return static_cast<int>(origin_.size()); }
    std::size_t size() const { return size_; }
    long axis_size(int a) const { return extent_[a].size(); }

    const RatVec& origin() const { return origin_; }
    const RatVec& step() const { return step_; }
    const std::vector<AxisExtent>& extent() const { return extent_; }

    Rat coord(int axis, long k) const { return origin_[axis] + step_[axis] * k; }

    RatVec point(std::size_t flat) const;
    std::vector<long> multi_index(std::size_t flat) const;
    std::size_t flat_of_multi(const std::vector<long>& k) const;

    // Multi-index on the infinite lattice, or nullopt if p is off-lattice.
    std::optional<std::vector<long>> lattice_index(const RatVec& p) const;
    bool on_lattice(const RatVec& p) const { return lattice_index(p).has_value(); }
    bool in_extent(const std::vector<long>& k) const;

    // Flat index if p is on the lattice and within the extent.
    std::optional<std::size_t> flat_index(const RatVec& p) const;

    // Per-axis coordinates rounded once to double, ascending.
    std::vector<double> axis_coords_dbl(int a) const;
    RatVec axis_coords(int a) const;

    bool operator==(const LatticeGrid& o) const {
        return origin_ == o.origin_ && step_ == o.step_ && extent_ == o.extent_;
    }
    bool operator!=(const LatticeGrid& o) const { return !(*this == o); }

private:
    RatVec origin_;
    RatVec step_;
    std::vector<AxisExtent> extent_;
    std::size_t size_ = 0;
};

// Concatenates axes: left block first.
LatticeGrid product(const LatticeGrid& a, const LatticeGrid& b);

// First dleft coordinates vs the rest.
std::pair<RatVec, RatVec> split_point(const RatVec& p, int dleft);

// Sub-grid made of the given axis block [from, from+count).
LatticeGrid block_grid(const LatticeGrid& g, int from, int count);

} // namespace cav
