#pragma once

#include <vector>

#include "cav/grid.hpp"
#include "cav/rational.hpp"

namespace cav {

// Dense rational matrix acting between lattice grids.
class RatLinMap {
public:
    RatLinMap(int rows, int cols, RatVec entries); // row-major
    static RatLinMap identity(int n);
    static RatLinMap scalar(const Rat& c);   // 1x1
    static RatLinMap zero(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Rat& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    Rat& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    RatVec apply(const RatVec& x) const;
    RatLinMap transpose() const;

    // Block assembly: [top; bottom] and [left, right].
    static RatLinMap vstack(const RatLinMap& top, const RatLinMap& bottom);
    static RatLinMap hstack(const RatLinMap& left, const RatLinMap& right);

    bool operator==(const RatLinMap& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    int rows_, cols_;
    RatVec a_;
};

// True iff the image of every src grid point lies on dst's infinite lattice.
// Exact rational arithmetic; decided algebraically (corner point plus one
// column test per axis that spans more than one index).
bool grid_compatible(const RatLinMap& map, const LatticeGrid& src, const LatticeGrid& dst);

} // namespace cav
