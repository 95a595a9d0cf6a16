#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

#include "cav/errors.hpp"

namespace cav {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;
using RatVec = std::vector<Rat>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

// Exact lift of a finite double into the rationals.
Rat rat_of(double v);

bool is_integer(const Rat& r);

// Accepts "3", "-1/2", "0.25", "2.5e-1".
std::optional<Rat> parse_rat(const std::string& s);

std::string rat_str(const Rat& r);
std::string rat_vec_str(const RatVec& v);

RatVec rat_vec(std::initializer_list<long> xs);

inline RatVec vec_add(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec vec_sub(const RatVec& a, const RatVec& b) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec vec_neg(const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline RatVec vec_scale(const Rat& c, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVec concat(const RatVec& a, const RatVec& b) {
    RatVec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Lexicographic order; used everywhere a canonical ordering of points is required.
inline bool lex_less(const RatVec& a, const RatVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return a.size() < b.size();
}

} // namespace cav
