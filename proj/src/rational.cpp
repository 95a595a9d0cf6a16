#include "cav/rational.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cav {

Rat rat_of(double v) {
    if (!std::isfinite(v)) throw Error("rat_of: non-finite double");
    if (v == 0.0) return Rat(0);
    int exp = 0;
    double m = std::frexp(v, &exp); // v = m * 2^exp, |m| in [0.5, 1)
    // 53 doublings make the mantissa integral.
    long long mant = static_cast<long long>(std::ldexp(m, 53));
    exp -= 53;
    Rat r(mant);
    if (exp > 0) {
        r *= Rat(BigInt(1) << exp);
    } else if (exp < 0) {
        r /= Rat(BigInt(1) << (-exp));
    }
    return r;
}

bool is_integer(const Rat& r) { return denominator(r) == 1; }

namespace {

// Decimal digit parser; avoids the octal reading of leading zeros in the
// cpp_int string constructor.
std::optional<BigInt> parse_int(const std::string& s) {
    if (s.empty()) return std::nullopt;
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        i = 1;
    }
    if (i == s.size()) return std::nullopt;
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        v = v * 10 + (s[i] - '0');
    }
    return neg ? BigInt(-v) : v;
}

} // namespace

std::optional<Rat> parse_rat(const std::string& s) {
    std::string t;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) return std::nullopt;
    auto slash = t.find('/');
    try {
        if (slash != std::string::npos) {
            auto num = parse_int(t.substr(0, slash));
            auto den = parse_int(t.substr(slash + 1));
            if (!num || !den || *den == 0) return std::nullopt;
            return Rat(*num, *den);
        }
        if (t.find('.') == std::string::npos && t.find('e') == std::string::npos &&
            t.find('E') == std::string::npos) {
            auto v = parse_int(t);
            if (!v) return std::nullopt;
            return Rat(*v);
        }
        // Decimal / scientific: parse sign, integer part, fraction, exponent.
        std::size_t i = 0;
        bool neg = false;
        if (t[i] == '+' || t[i] == '-') neg = t[i++] == '-';
        std::string digits;
        long frac_digits = 0;
        bool seen_dot = false, any = false;
        for (; i < t.size() && (std::isdigit(static_cast<unsigned char>(t[i])) || t[i] == '.'); ++i) {
            if (t[i] == '.') {
                if (seen_dot) return std::nullopt;
                seen_dot = true;
            } else {
                digits += t[i];
                any = true;
                if (seen_dot) frac_digits++;
            }
        }
        if (!any) return std::nullopt;
        long expo = 0;
        if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
            expo = std::stol(t.substr(i + 1));
            i = t.size();
        }
        if (i != t.size()) return std::nullopt;
        auto mant = parse_int(digits);
        if (!mant) return std::nullopt;
        Rat r{*mant};
        long p = expo - frac_digits;
        BigInt ten(10);
        if (p > 0)
            for (long k = 0; k < p; ++k) r *= ten;
        else
            for (long k = 0; k < -p; ++k) r /= ten;
        return neg ? -r : r;
    } catch (...) {
        return std::nullopt;
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

std::string rat_vec_str(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += rat_str(v[i]);
    }
    return s + ")";
}

RatVec rat_vec(std::initializer_list<long> xs) {
    RatVec v;
    v.reserve(xs.size());
    for (long x : xs) v.emplace_back(x);
    return v;
}

} // namespace cav
