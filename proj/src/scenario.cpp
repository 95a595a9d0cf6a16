#include "cav/scenario.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cav/errors.hpp"

namespace cav {

namespace {

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

// Removes a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_str = !in_str;
        if (line[i] == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

int bracket_balance(const std::string& s) {
    int depth = 0;
    bool in_str = false;
    for (char c : s) {
        if (c == '"') in_str = !in_str;
        if (in_str) continue;
        if (c == '[') ++depth;
        if (c == ']') --depth;
    }
    return depth;
}

struct ValueParser {
    const std::string& s;
    std::size_t pos = 0;
    int line;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg, line, static_cast<int>(pos) + 1);
    }

    TValue parse() {
        skip_ws();
        if (pos >= s.size()) fail("missing value");
        if (s[pos] == '[') return parse_array();
        if (s[pos] == '"') return parse_string();
        return parse_bare();
    }

    TValue parse_array() {
        TValue v;
        v.kind = TValue::Kind::Array;
        ++pos; // '['
        skip_ws();
        while (pos < s.size() && s[pos] != ']') {
            v.items.push_back(parse());
            skip_ws();
            if (pos < s.size() && s[pos] == ',') {
                ++pos;
                skip_ws();
            }
        }
        if (pos >= s.size()) fail("unterminated array");
        ++pos; // ']'
        return v;
    }

    TValue parse_string() {
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != '"') ++pos;
        if (pos >= s.size()) fail("unterminated string");
        TValue v;
        v.scalar = s.substr(start, pos - start);
        ++pos;
        return v;
    }

    TValue parse_bare() {
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ',' && s[pos] != ']' && s[pos] != '#') ++pos;
        TValue v;
        v.scalar = strip(s.substr(start, pos - start));
        if (v.scalar.empty()) fail("empty value");
        return v;
    }
};

} // namespace

TDoc parse_toml_subset(const std::string& text) {
    TDoc doc;
    TTable* current = &doc.root;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        int first_line = lineno;
        std::string line = strip(strip_comment(raw));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']' || line.size() < 3)
                throw ParseError("malformed section header", lineno, 1);
            std::string name = strip(line.substr(1, line.size() - 2));
            doc.sections.emplace_back(name, TTable{});
            current = &doc.sections.back().second;
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key = value", lineno, 1);
        std::string key = strip(line.substr(0, eq));
        if (key.empty()) throw ParseError("empty key", lineno, 1);
        std::string value = line.substr(eq + 1);
        while (bracket_balance(value) > 0) {
            if (!std::getline(in, raw))
                throw ParseError("unterminated multi-line array", first_line, 1);
            ++lineno;
            value += ' ' + strip(strip_comment(raw));
        }
        ValueParser vp{value, 0, first_line};
        TValue v = vp.parse();
        if (current->count(key)) throw ParseError("duplicate key '" + key + "'", first_line, 1);
        (*current)[key] = std::move(v);
    }
    return doc;
}

namespace {

const TValue& need(const TTable& t, const std::string& sec, const std::string& key) {
    auto it = t.find(key);
    if (it == t.end()) throw ValidationError("[" + sec + "] missing key '" + key + "'");
    return it->second;
}

Rat scalar_rat(const TValue& v, const std::string& where) {
    if (v.kind != TValue::Kind::Scalar)
        throw ValidationError(where + ": expected a rational scalar");
    auto r = parse_rat(v.scalar);
    if (!r) throw ValidationError(where + ": cannot parse rational '" + v.scalar + "'");
    return *r;
}

} // namespace

std::string tget_str(const TTable& t, const std::string& sec, const std::string& key) {
    const TValue& v = need(t, sec, key);
    if (v.kind != TValue::Kind::Scalar)
        throw ValidationError("[" + sec + "] key '" + key + "' must be a string");
    return v.scalar;
}

std::string tget_str_or(const TTable& t, const std::string& key, const std::string& dflt) {
    auto it = t.find(key);
    return it == t.end() ? dflt : it->second.scalar;
}

bool tget_bool_or(const TTable& t, const std::string& key, bool dflt) {
    auto it = t.find(key);
    if (it == t.end()) return dflt;
    if (it->second.scalar == "true") return true;
    if (it->second.scalar == "false") return false;
    throw ValidationError("key '" + key + "' must be true or false");
}

long tget_long(const TTable& t, const std::string& sec, const std::string& key) {
    Rat r = scalar_rat(need(t, sec, key), "[" + sec + "] " + key);
    if (!is_integer(r)) throw ValidationError("[" + sec + "] key '" + key + "' must be an integer");
    return numerator(r).convert_to<long>();
}

Rat tget_rat(const TTable& t, const std::string& sec, const std::string& key) {
    return scalar_rat(need(t, sec, key), "[" + sec + "] " + key);
}

RatVec tget_ratvec(const TTable& t, const std::string& sec, const std::string& key) {
    const TValue& v = need(t, sec, key);
    if (v.kind != TValue::Kind::Array)
        throw ValidationError("[" + sec + "] key '" + key + "' must be an array");
    RatVec out;
    for (const auto& item : v.items) out.push_back(scalar_rat(item, "[" + sec + "] " + key));
    return out;
}

std::vector<RatVec> tget_nested(const TTable& t, const std::string& sec, const std::string& key) {
    const TValue& v = need(t, sec, key);
    if (v.kind != TValue::Kind::Array)
        throw ValidationError("[" + sec + "] key '" + key + "' must be an array of arrays");
    std::vector<RatVec> out;
    for (const auto& row : v.items) {
        if (row.kind != TValue::Kind::Array)
            throw ValidationError("[" + sec + "] key '" + key + "' must be an array of arrays");
        RatVec r;
        for (const auto& item : row.items) r.push_back(scalar_rat(item, "[" + sec + "] " + key));
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<long> tget_longs(const TTable& t, const std::string& sec, const std::string& key) {
    RatVec v = tget_ratvec(t, sec, key);
    std::vector<long> out;
    for (const auto& r : v) {
        if (!is_integer(r))
            throw ValidationError("[" + sec + "] key '" + key + "' must hold integers");
        out.push_back(numerator(r).convert_to<long>());
    }
    return out;
}

std::vector<std::string> tget_strs(const TTable& t, const std::string& sec,
                                   const std::string& key) {
    const TValue& v = need(t, sec, key);
    if (v.kind != TValue::Kind::Array)
        throw ValidationError("[" + sec + "] key '" + key + "' must be an array");
    std::vector<std::string> out;
    for (const auto& item : v.items) out.push_back(item.scalar);
    return out;
}

bool thas(const TTable& t, const std::string& key) { return t.count(key) > 0; }

namespace {

LatticeGrid build_grid(const std::string& sec, const TTable& t) {
    RatVec origin = tget_ratvec(t, sec, "origin");
    RatVec step = tget_ratvec(t, sec, "step");
    std::vector<long> lo = tget_longs(t, sec, "lo");
    std::vector<long> hi = tget_longs(t, sec, "hi");
    if (step.size() != origin.size() || lo.size() != origin.size() || hi.size() != origin.size())
        throw ValidationError("[" + sec + "] origin/step/lo/hi lengths disagree");
    std::vector<AxisExtent> ext;
    for (std::size_t a = 0; a < lo.size(); ++a) ext.push_back({lo[a], hi[a]});
    return LatticeGrid(origin, step, ext);
}

struct FnBuild {
    GridFn fn;
    bool convex;
};

FnBuild build_fn(const std::string& sec, const TTable& t, const Scenario& sc) {
    std::string kind = tget_str(t, sec, "kind");
    if (kind == "repr_sample") {
        const ReprFn& r = sc.repr(tget_str(t, sec, "repr"));
        return {r.sample(), true};
    }

    const LatticeGrid& g = sc.grid(tget_str(t, sec, "grid"));
    const int d = g.dim();
    std::vector<ExtReal> vals(g.size());

    auto fill_exact = [&](auto&& eval) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::optional<Rat> v = eval(g.point(i));
            vals[i] = v ? ExtReal::finite(to_double(*v)) : ExtReal::infinity();
        }
    };

    if (kind == "quadratic") {
        RatVec quad = tget_ratvec(t, sec, "quad");
        RatVec lin = thas(t, "lin") ? tget_ratvec(t, sec, "lin") : RatVec(d, Rat(0));
        Rat cst = thas(t, "const") ? tget_rat(t, sec, "const") : Rat(0);
        if (static_cast<int>(quad.size()) != d || static_cast<int>(lin.size()) != d)
            throw ValidationError("[" + sec + "] coefficient arity mismatch");
        bool convex = true;
        for (const auto& c : quad) convex = convex && c >= 0;
        fill_exact([&](const RatVec& p) {
            Rat v = cst;
            for (int a = 0; a < d; ++a) v += quad[a] * p[a] * p[a] + lin[a] * p[a];
            return std::optional<Rat>(v);
        });
        return {GridFn(g, std::move(vals), sec), convex};
    }
    if (kind == "abs") {
        RatVec scale = tget_ratvec(t, sec, "scale");
        if (static_cast<int>(scale.size()) != d)
            throw ValidationError("[" + sec + "] coefficient arity mismatch");
        bool convex = true;
        for (const auto& c : scale) convex = convex && c >= 0;
        fill_exact([&](const RatVec& p) {
            Rat v = 0;
            for (int a = 0; a < d; ++a) v += scale[a] * abs(p[a]);
            return std::optional<Rat>(v);
        });
        return {GridFn(g, std::move(vals), sec), convex};
    }
    if (kind == "indicator_box") {
        RatVec lo = tget_ratvec(t, sec, "box_lo");
        RatVec hi = tget_ratvec(t, sec, "box_hi");
        if (static_cast<int>(lo.size()) != d || static_cast<int>(hi.size()) != d)
            throw ValidationError("[" + sec + "] box arity mismatch");
        fill_exact([&](const RatVec& p) -> std::optional<Rat> {
            for (int a = 0; a < d; ++a)
                if (p[a] < lo[a] || p[a] > hi[a]) return std::nullopt;
            return Rat(0);
        });
        return {GridFn(g, std::move(vals), sec), true};
    }
    if (kind == "indicator_polytope") {
        const Polytope& K = sc.polytope(tget_str(t, sec, "polytope"));
        fill_exact([&](const RatVec& p) -> std::optional<Rat> {
            if (!K.contains(p)) return std::nullopt;
            return Rat(0);
        });
        return {GridFn(g, std::move(vals), sec), true};
    }
    if (kind == "support") {
        const Polytope& K = sc.polytope(tget_str(t, sec, "polytope"));
        fill_exact([&](const RatVec& p) { return std::optional<Rat>(K.support(p)); });
        return {GridFn(g, std::move(vals), sec), true};
    }
    if (kind == "max_affine") {
        std::vector<RatVec> rows = tget_nested(t, sec, "slopes");
        RatVec offs = tget_ratvec(t, sec, "offsets");
        if (rows.size() != offs.size() || rows.empty())
            throw ValidationError("[" + sec + "] slopes/offsets arity mismatch");
        fill_exact([&](const RatVec& p) {
            Rat best = dot(rows[0], p) + offs[0];
            for (std::size_t i = 1; i < rows.size(); ++i) {
                Rat v = dot(rows[i], p) + offs[i];
                if (v > best) best = v;
            }
            return std::optional<Rat>(best);
        });
        return {GridFn(g, std::move(vals), sec), true};
    }
    if (kind == "pairing") {
        long split = tget_long(t, sec, "split");
        if (split <= 0 || split * 2 != d)
            throw ValidationError("[" + sec + "] pairing needs grid dim = 2*split");
        fill_exact([&](const RatVec& p) {
            auto [x, s] = split_point(p, static_cast<int>(split));
            return std::optional<Rat>(dot(x, s));
        });
        return {GridFn(g, std::move(vals), sec), false};
    }
    if (kind == "values") {
        std::vector<std::string> raw = tget_strs(t, sec, "values");
        if (raw.size() != g.size())
            throw ValidationError("[" + sec + "] values length must equal the grid size");
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] == "inf") {
                vals[i] = ExtReal::infinity();
            } else {
                auto r = parse_rat(raw[i]);
                if (!r) throw ValidationError("[" + sec + "] bad value '" + raw[i] + "'");
                vals[i] = ExtReal::finite(to_double(*r));
            }
        }
        return {GridFn(g, std::move(vals), sec), false};
    }
    if (kind == "sum") {
        std::vector<std::string> terms = tget_strs(t, sec, "terms");
        if (terms.empty()) throw ValidationError("[" + sec + "] sum needs terms");
        bool convex = true;
        const GridFn& first = sc.fn(terms[0]);
        if (first.grid() != g) throw ValidationError("[" + sec + "] term grid mismatch");
        vals.assign(first.values().begin(), first.values().end());
        convex = convex && sc.fn_convex.at(terms[0]);
        for (std::size_t k = 1; k < terms.size(); ++k) {
            const GridFn& fk = sc.fn(terms[k]);
            if (fk.grid() != g) throw ValidationError("[" + sec + "] term grid mismatch");
            for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = vals[i] + fk.at(i);
            convex = convex && sc.fn_convex.at(terms[k]);
        }
        return {GridFn(g, std::move(vals), sec), convex};
    }
    if (kind == "scale") {
        const GridFn& base = sc.fn(tget_str(t, sec, "term"));
        if (base.grid() != g) throw ValidationError("[" + sec + "] term grid mismatch");
        Rat factor = tget_rat(t, sec, "factor");
        double fd = to_double(factor);
        for (std::size_t i = 0; i < vals.size(); ++i) {
            ExtReal v = base.at(i);
            vals[i] = v.is_finite() ? ExtReal::finite(fd * v.value()) : ExtReal::infinity();
        }
        return {GridFn(g, std::move(vals), sec), factor >= 0 && sc.fn_convex.at(tget_str(t, sec, "term"))};
    }
    throw ValidationError("[" + sec + "] unknown function kind '" + kind + "'");
}

ReprFn build_repr(const std::string& sec, const TTable& t, const Scenario& sc) {
    std::string kind = tget_str(t, sec, "kind");
    if (kind == "example6") {
        return ReprFn::example6(sc.polytope(tget_str(t, sec, "K")), tget_ratvec(t, sec, "ystar"),
                                sc.grid(tget_str(t, sec, "grid_E")),
                                sc.grid(tget_str(t, sec, "grid_Es")));
    }
    if (kind == "example7") {
        return ReprFn::example7(tget_ratvec(t, sec, "y"), sc.polytope(tget_str(t, sec, "K")),
                                sc.grid(tget_str(t, sec, "grid_E")),
                                sc.grid(tget_str(t, sec, "grid_Es")));
    }
    if (kind == "separable") {
        return ReprFn::separable(sc.fn(tget_str(t, sec, "phi")),
                                 sc.grid(tget_str(t, sec, "grid_Es")));
    }
    if (kind == "sampled") {
        return ReprFn::sampled(sc.fn(tget_str(t, sec, "fn")),
                               static_cast<int>(tget_long(t, sec, "split")));
    }
    throw ValidationError("[" + sec + "] unknown repr kind '" + kind + "'");
}

CcInstance build_ccinst(const std::string& sec, const TTable& t, const Scenario& sc) {
    std::string kind = tget_str(t, sec, "kind");
    if (kind == "star")
        return CcInstance::star(tget_ratvec(t, sec, "y"), sc.polytope(tget_str(t, sec, "C")));
    if (kind == "space")
        return CcInstance::space(sc.polytope(tget_str(t, sec, "C")),
                                 tget_ratvec(t, sec, "ystar"));
    throw ValidationError("[" + sec + "] unknown cc instance kind '" + kind + "'");
}

} // namespace

const LatticeGrid& Scenario::grid(const std::string& id) const {
    auto it = grids.find(id);
    if (it == grids.end()) throw ValidationError("unknown grid '" + id + "'");
    return it->second;
}
const RatLinMap& Scenario::map(const std::string& id) const {
    auto it = maps.find(id);
    if (it == maps.end()) throw ValidationError("unknown map '" + id + "'");
    return it->second;
}
const Polytope& Scenario::polytope(const std::string& id) const {
    auto it = polytopes.find(id);
    if (it == polytopes.end()) throw ValidationError("unknown polytope '" + id + "'");
    return it->second;
}
const GridFn& Scenario::fn(const std::string& id) const {
    auto it = fns.find(id);
    if (it == fns.end()) throw ValidationError("unknown function '" + id + "'");
    return it->second;
}
const ReprFn& Scenario::repr(const std::string& id) const {
    auto it = reprs.find(id);
    if (it == reprs.end()) throw ValidationError("unknown repr '" + id + "'");
    return it->second;
}
const CcInstance& Scenario::ccinst(const std::string& id) const {
    auto it = ccinsts.find(id);
    if (it == ccinsts.end()) throw ValidationError("unknown cc instance '" + id + "'");
    return it->second;
}

Scenario parse_scenario(const std::string& text, const std::string& display_name) {
    TDoc doc = parse_toml_subset(text);
    Scenario sc;
    sc.name = tget_str_or(doc.root, "name", display_name);
    sc.lattice_exact = tget_bool_or(doc.root, "lattice_exact", false);

    // Two passes so functions may reference polytopes/grids declared later;
    // checks keep declaration order.
    for (const auto& [sec, table] : doc.sections) {
        auto dotpos = sec.find('.');
        if (dotpos == std::string::npos)
            throw ValidationError("section '" + sec + "' must be <kind>.<name>");
        std::string kind = sec.substr(0, dotpos), id = sec.substr(dotpos + 1);
        if (kind == "grid")
            sc.grids.emplace(id, build_grid(sec, table));
        else if (kind == "map")
            sc.maps.emplace(id, RatLinMap(static_cast<int>(tget_long(table, sec, "rows")),
                                          static_cast<int>(tget_long(table, sec, "cols")),
                                          tget_ratvec(table, sec, "entries")));
        else if (kind == "polytope")
            sc.polytopes.emplace(id, Polytope(static_cast<int>(tget_nested(table, sec, "vertices")
                                                                   .at(0)
                                                                   .size()),
                                              tget_nested(table, sec, "vertices")));
        else if (kind == "fn" || kind == "repr" || kind == "ccinst" || kind == "check")
            ; // second pass
        else
            throw ValidationError("unknown section kind '" + kind + "'");
    }
    for (const auto& [sec, table] : doc.sections) {
        auto dotpos = sec.find('.');
        std::string kind = sec.substr(0, dotpos), id = sec.substr(dotpos + 1);
        if (kind == "fn") {
            FnBuild fb = build_fn(sec, table, sc);
            sc.fns.emplace(id, std::move(fb.fn));
            sc.fn_convex[id] = fb.convex;
        } else if (kind == "repr") {
            sc.reprs.emplace(id, build_repr(sec, table, sc));
        } else if (kind == "ccinst") {
            sc.ccinsts.emplace(id, build_ccinst(sec, table, sc));
        } else if (kind == "check") {
            CheckSpec cs;
            cs.name = id;
            cs.type = tget_str(table, sec, "type");
            cs.params = table;
            sc.checks.push_back(std::move(cs));
        }
    }
    return sc;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    std::string base = path;
    auto slash = base.find_last_of('/');
    if (slash != std::string::npos) base = base.substr(slash + 1);
    auto dot = base.find_last_of('.');
    if (dot != std::string::npos) base = base.substr(0, dot);
    return parse_scenario(ss.str(), base);
}

} // namespace cav
