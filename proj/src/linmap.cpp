#include "cav/linmap.hpp"

#include "cav/errors.hpp"

namespace cav {

RatLinMap::RatLinMap(int rows, int cols, RatVec entries) : rows_(rows), cols_(cols), a_(std::move(entries)) {
    if (rows_ <= 0 || cols_ <= 0) throw DimensionError("RatLinMap: nonpositive shape");
    if (a_.size() != static_cast<std::size_t>(rows_) * cols_)
        throw DimensionError("RatLinMap: entry count mismatch");
}

RatLinMap RatLinMap::identity(int n) {
    RatVec e(static_cast<std::size_t>(n) * n, Rat(0));
    for (int i = 0; i < n; ++i) e[static_cast<std::size_t>(i) * n + i] = 1;
    return RatLinMap(n, n, std::move(e));
}

RatLinMap RatLinMap::scalar(const Rat& c) { return RatLinMap(1, 1, {c}); }

RatLinMap RatLinMap::zero(int rows, int cols) {
    return RatLinMap(rows, cols, RatVec(static_cast<std::size_t>(rows) * cols, Rat(0)));
}

RatVec RatLinMap::apply(const RatVec& x) const {
    if (static_cast<int>(x.size()) != cols_) throw DimensionError("RatLinMap::apply: dim mismatch");
    RatVec y(rows_, Rat(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0) y[i] += at(i, j) * x[j];
    return y;
}

RatLinMap RatLinMap::transpose() const {
    RatVec e(a_.size());
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) e[static_cast<std::size_t>(j) * rows_ + i] = at(i, j);
    return RatLinMap(cols_, rows_, std::move(e));
}

RatLinMap RatLinMap::vstack(const RatLinMap& top, const RatLinMap& bottom) {
    if (top.cols() != bottom.cols()) throw DimensionError("vstack: column mismatch");
    RatVec e;
    e.reserve((top.rows() + bottom.rows()) * static_cast<std::size_t>(top.cols()));
    for (int i = 0; i < top.rows(); ++i)
        for (int j = 0; j < top.cols(); ++j) e.push_back(top.at(i, j));
    for (int i = 0; i < bottom.rows(); ++i)
        for (int j = 0; j < bottom.cols(); ++j) e.push_back(bottom.at(i, j));
    return RatLinMap(top.rows() + bottom.rows(), top.cols(), std::move(e));
}

RatLinMap RatLinMap::hstack(const RatLinMap& left, const RatLinMap& right) {
    if (left.rows() != right.rows()) throw DimensionError("hstack: row mismatch");
    RatVec e;
    e.reserve(static_cast<std::size_t>(left.rows()) * (left.cols() + right.cols()));
    for (int i = 0; i < left.rows(); ++i) {
        for (int j = 0; j < left.cols(); ++j) e.push_back(left.at(i, j));
        for (int j = 0; j < right.cols(); ++j) e.push_back(right.at(i, j));
    }
    return RatLinMap(left.rows(), left.cols() + right.cols(), std::move(e));
}

bool grid_compatible(const RatLinMap& map, const LatticeGrid& src, const LatticeGrid& dst) {
    if (map.cols() != src.dim() || map.rows() != dst.dim())
        throw DimensionError("grid_compatible: map shape does not match grids");
    // Image of the low corner must be on the lattice; per axis spanning more
    // than one index, the image of step*e_a must be an integer combination of
    // dst steps. Together these cover every src grid point.
    RatVec corner(src.dim());
    for (int a = 0; a < src.dim(); ++a) corner[a] = src.coord(a, src.extent()[a].lo);
    if (!dst.on_lattice(map.apply(corner))) return false;
    for (int a = 0; a < src.dim(); ++a) {
        if (src.extent()[a].size() <= 1) continue;
        for (int i = 0; i < dst.dim(); ++i) {
            Rat q = map.at(i, a) * src.step()[a] / dst.step()[i];
            if (!is_integer(q)) return false;
        }
    }
    return true;
}

} // namespace cav
