#pragma once

#include <cmath>
#include <limits>

#include "cav/errors.hpp"

namespace cav {

// Extended real in ]-inf, +inf]. The infinite state is a distinguished flag,
// not an IEEE sentinel, so max/min reductions never meet NaN. -inf is
// unrepresentable; any operation that would produce it throws.
class ExtReal {
public:
    ExtReal() : v_(0.0), finite_(true) {}

    static ExtReal finite(double v) {
        if (!std::isfinite(v)) throw MinusInfinityError("ExtReal::finite: non-finite value");
        ExtReal r;
        r.v_ = v;
        r.finite_ = true;
        return r;
    }

    static ExtReal infinity() {
        ExtReal r;
        r.finite_ = false;
        r.v_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_finite() const { return finite_; }
    bool is_infinite() const { return !finite_; }

    double value() const {
        if (!finite_) throw Error("ExtReal::value on +inf");
        return v_;
    }

    // +inf as IEEE for callers that want homogeneous double pipelines.
    double as_double() const { return finite_ ? v_ : std::numeric_limits<double>::infinity(); }

    ExtReal operator+(const ExtReal& o) const {
        if (!finite_ || !o.finite_) return infinity();
        double s = v_ + o.v_;
        if (!std::isfinite(s)) {
            if (s > 0) return infinity();
            throw MinusInfinityError("ExtReal addition overflowed to -inf");
        }
        return finite(s);
    }

    bool operator==(const ExtReal& o) const {
        if (finite_ != o.finite_) return false;
        return !finite_ || v_ == o.v_;
    }
    bool operator!=(const ExtReal& o) const { return !(*this == o); }

    bool operator<(const ExtReal& o) const {
        if (!finite_) return false;        // +inf is greatest
        if (!o.finite_) return true;
        return v_ < o.v_;
    }
    bool operator<=(const ExtReal& o) const { return *this < o || *this == o; }
    bool operator>(const ExtReal& o) const { return o < *this; }
    bool operator>=(const ExtReal& o) const { return o <= *this; }

private:
    double v_;
    bool finite_;
};

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a <= b ? a : b; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a >= b ? a : b; }

} // namespace cav
