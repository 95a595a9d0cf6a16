#include "cav/opgraph.hpp"

#include <algorithm>
#include <set>

#include "cav/errors.hpp"

namespace cav {

namespace {
bool pair_less(const std::pair<RatVec, RatVec>& a, const std::pair<RatVec, RatVec>& b) {
    if (a.first != b.first) return lex_less(a.first, b.first);
    return lex_less(a.second, b.second);
}
} // namespace

OperatorGraph OperatorGraph::from_pairs(int dim, std::vector<std::pair<RatVec, RatVec>> raw) {
    for (const auto& [x, xs] : raw)
        if (static_cast<int>(x.size()) != dim || static_cast<int>(xs.size()) != dim)
            throw DimensionError("OperatorGraph: pair dimension mismatch");
    std::sort(raw.begin(), raw.end(), pair_less);
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    OperatorGraph g;
    g.dim = dim;
    g.pairs = std::move(raw);
    return g;
}

std::vector<RatVec> OperatorGraph::domain() const {
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> s(&lex_less);
    for (const auto& p : pairs) s.insert(p.first);
    return {s.begin(), s.end()};
}

std::vector<RatVec> OperatorGraph::range() const {
    std::set<RatVec, bool (*)(const RatVec&, const RatVec&)> s(&lex_less);
    for (const auto& p : pairs) s.insert(p.second);
    return {s.begin(), s.end()};
}

std::vector<RatVec> OperatorGraph::image_of(const RatVec& x) const {
    std::vector<RatVec> out;
    for (const auto& p : pairs)
        if (p.first == x) out.push_back(p.second);
    return out;
}

std::vector<RatVec> OperatorGraph::preimage_of(const RatVec& xs) const {
    std::vector<RatVec> out;
    for (const auto& p : pairs)
        if (p.second == xs) out.push_back(p.first);
    return out;
}

} // namespace cav
