#pragma once

#include <map>
#include <string>
#include <vector>

#include "cav/gridfn.hpp"
#include "cav/linmap.hpp"
#include "cav/monops.hpp"
#include "cav/polytope.hpp"
#include "cav/reprfn.hpp"

namespace cav {

// Line-oriented TOML-subset document: [dotted.sections] of key = value pairs,
// where values are quoted strings, bare scalars (numbers, rationals like
// "1/2", booleans) or (nested) single- or multi-line arrays.
struct TValue {
    enum class Kind { Scalar, Array };
    Kind kind = Kind::Scalar;
    std::string scalar;
    std::vector<TValue> items;
};
using TTable = std::map<std::string, TValue>;

struct TDoc {
    TTable root;
    std::vector<std::pair<std::string, TTable>> sections; // declaration order
};

TDoc parse_toml_subset(const std::string& text);

// Typed accessors; every failure names the section and key.
std::string tget_str(const TTable& t, const std::string& sec, const std::string& key);
std::string tget_str_or(const TTable& t, const std::string& key, const std::string& dflt);
bool tget_bool_or(const TTable& t, const std::string& key, bool dflt);
long tget_long(const TTable& t, const std::string& sec, const std::string& key);
Rat tget_rat(const TTable& t, const std::string& sec, const std::string& key);
RatVec tget_ratvec(const TTable& t, const std::string& sec, const std::string& key);
std::vector<RatVec> tget_nested(const TTable& t, const std::string& sec, const std::string& key);
std::vector<long> tget_longs(const TTable& t, const std::string& sec, const std::string& key);
std::vector<std::string> tget_strs(const TTable& t, const std::string& sec, const std::string& key);
bool thas(const TTable& t, const std::string& key);

struct CheckSpec {
    std::string name;
    std::string type;
    TTable params;
};

// A declarative verification instance: named grids, rational maps, polytopes,
// sampled functions from a fixed expression vocabulary, representative
// functions, cc test instances, and an ordered list of checks.
struct Scenario {
    std::string name;
    bool lattice_exact = false;
    std::map<std::string, LatticeGrid> grids;
    std::map<std::string, RatLinMap> maps;
    std::map<std::string, Polytope> polytopes;
    std::map<std::string, GridFn> fns;
    std::map<std::string, bool> fn_convex; // structural convexity of the vocabulary term
    std::map<std::string, ReprFn> reprs;
    std::map<std::string, CcInstance> ccinsts;
    std::vector<CheckSpec> checks;

    const LatticeGrid& grid(const std::string& id) const;
    const RatLinMap& map(const std::string& id) const;
    const Polytope& polytope(const std::string& id) const;
    const GridFn& fn(const std::string& id) const;
    const ReprFn& repr(const std::string& id) const;
    const CcInstance& ccinst(const std::string& id) const;
};

Scenario parse_scenario(const std::string& text, const std::string& display_name);
Scenario load_scenario(const std::string& path);

} // namespace cav
