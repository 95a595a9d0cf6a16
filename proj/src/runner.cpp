#include "cav/runner.hpp"

#include <chrono>
#include <random>
#include <sstream>

#include "cav/conjugate.hpp"
#include "cav/errors.hpp"
#include "cav/quadab.hpp"

namespace cav {

namespace {

using Verdict = CheckOutcome::Verdict;

double resolve_tol(const TTable& t, const std::string& sec, double auto_value, double scale) {
    std::string raw = tget_str_or(t, "tol", "auto");
    if (raw == "auto") return auto_value * scale;
    auto r = parse_rat(raw);
    if (!r) throw ValidationError("[" + sec + "] bad tol '" + raw + "'");
    return to_double(*r) * scale;
}

QuadSetup t3_setup(const Scenario& sc, const TTable& p, const std::string& sec) {
    const GridFn& f = sc.fn(tget_str(p, sec, "f"));
    const GridFn& g = sc.fn(tget_str(p, sec, "g"));
    int df = static_cast<int>(tget_long(p, sec, "split_f"));
    int dg = static_cast<int>(tget_long(p, sec, "split_g"));
    if (df <= 0 || df >= f.grid().dim() || dg <= 0 || dg >= g.grid().dim())
        throw ValidationError("[" + sec + "] invalid block split");
    return QuadSetup(f, g, sc.map(tget_str(p, sec, "A")), sc.map(tget_str(p, sec, "B")),
                     block_grid(f.grid(), 0, df), block_grid(f.grid(), df, f.grid().dim() - df),
                     block_grid(g.grid(), 0, dg), block_grid(g.grid(), dg, g.grid().dim() - dg),
                     sc.grid(tget_str(p, sec, "dual_X")), sc.grid(tget_str(p, sec, "dual_U")),
                     sc.grid(tget_str(p, sec, "dual_Y")), sc.grid(tget_str(p, sec, "dual_V")));
}

bool structural_convex(const Scenario& sc, const TTable& p, const std::string& sec) {
    if (thas(p, "convex")) return tget_bool_or(p, "convex", false);
    auto it_f = sc.fn_convex.find(tget_str(p, sec, "f"));
    auto it_g = sc.fn_convex.find(tget_str(p, sec, "g"));
    return it_f != sc.fn_convex.end() && it_g != sc.fn_convex.end() && it_f->second &&
           it_g->second;
}

std::string point_str(const RatVec& v) { return rat_vec_str(v); }

std::string graph_str(const OperatorGraph& g) {
    std::string s = "[";
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
        if (i) s += ", ";
        s += point_str(g.pairs[i].first) + "->" + point_str(g.pairs[i].second);
    }
    return s + "]";
}

void note_qualification(CheckOutcome& out, const QCResult& qc) {
    out.notes.push_back(std::string("qualification: ") +
                        (qc.is_subspace ? "subspace" : "not a subspace") +
                        " (generators=" + std::to_string(qc.generators.size()) +
                        ", basis_dim=" + std::to_string(qc.basis.size()) + ")");
    if (!qc.is_subspace && qc.failing) {
        out.notes.push_back("failing generator: " + point_str(qc.generators[*qc.failing]) +
                            ", separating: " + point_str(qc.separating));
    } else if (qc.is_subspace && qc.generators.size() <= 8) {
        for (std::size_t j = 0; j < qc.generators.size(); ++j)
            out.notes.push_back("certificate -" + point_str(qc.generators[j]) +
                                " = combo " + point_str(qc.combos[j]));
    }
}

void duality_notes(CheckOutcome& out, const DualityReport& rep, const std::string& expect) {
    out.notes.push_back(std::string("weak_ok: ") + (rep.weak_ok ? "true" : "false"));
    out.notes.push_back(std::string("convex_closed: ") + (rep.convex_closed ? "true" : "false"));
    out.notes.push_back(std::string("domains_intersect: ") +
                        (rep.domains_intersect ? "true" : "false"));
    note_qualification(out, rep.qualification);
    out.notes.push_back("expect: " + expect);
    if (rep.max_gap.is_finite()) {
        out.gap = rep.max_gap.value();
        out.notes.push_back("worst dual point: " +
                            point_str(rep.lhs.grid().point(rep.worst_index)));
        if (rep.witnesses[rep.worst_index])
            out.witness = point_str(*rep.witnesses[rep.worst_index]);
    } else {
        out.notes.push_back("max_gap: inf (dual grid missed every feasible witness somewhere)");
    }
    out.tolerance = rep.tolerance;
}

Verdict duality_verdict(const DualityReport& rep, const std::string& expect,
                        const std::string& sec) {
    if (expect == "strong")
        return rep.weak_ok && rep.applicable && rep.strong_ok ? Verdict::Pass : Verdict::Fail;
    if (expect == "weak") return rep.weak_ok ? Verdict::Pass : Verdict::Fail;
    if (expect == "inapplicable")
        return rep.weak_ok && !rep.applicable ? Verdict::Pass : Verdict::Fail;
    throw ValidationError("[" + sec + "] expect must be strong|weak|inapplicable");
}

CheckOutcome run_verify_t3(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    QuadSetup setup = t3_setup(sc, cs.params, sec);
    double tol = resolve_tol(cs.params, sec, instance_tolerance_t3(setup), opt.tol_scale);
    DualityReport rep = verify_t3(setup, tol, structural_convex(sc, cs.params, sec));
    std::string expect = tget_str_or(cs.params, "expect", "strong");
    duality_notes(out, rep, expect);
    out.verdict = duality_verdict(rep, expect, sec);
    return out;
}

CheckOutcome run_verify_t21(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    const GridFn& k = sc.fn(tget_str(cs.params, sec, "k"));
    int dw = static_cast<int>(tget_long(cs.params, sec, "split_w"));
    Quad21Setup setup(k, dw, sc.map(tget_str(cs.params, sec, "C")),
                      sc.map(tget_str(cs.params, sec, "D")),
                      sc.grid(tget_str(cs.params, sec, "grid_X")),
                      sc.grid(tget_str(cs.params, sec, "grid_U")),
                      sc.grid(tget_str(cs.params, sec, "dual_X")),
                      sc.grid(tget_str(cs.params, sec, "dual_U")),
                      sc.grid(tget_str(cs.params, sec, "dual_W")),
                      sc.grid(tget_str(cs.params, sec, "dual_T")));
    double tol = resolve_tol(cs.params, sec, instance_tolerance_t21(setup), opt.tol_scale);
    std::optional<bool> convex;
    if (thas(cs.params, "convex")) convex = tget_bool_or(cs.params, "convex", false);
    DualityReport rep = verify_t21(setup, tol, convex);
    std::string expect = tget_str_or(cs.params, "expect", "strong");
    duality_notes(out, rep, expect);
    out.verdict = duality_verdict(rep, expect, sec);
    return out;
}

CheckOutcome run_cross_path(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    QuadSetup setup = t3_setup(sc, cs.params, sec);
    Lift lift = remark22_lift(setup, opt.max_cells);

    GridFn h3 = infconv_t3(setup);
    GridFn h21 = infconv_t21(lift.k, lift.dw, lift.C, lift.D, setup.xg, setup.ug);
    bool h_equal = h3.same_values(h21);

    GridFn fstar = conjugate_fast(setup.f, product(setup.xs, setup.us));
    GridFn gstar = conjugate_fast(setup.g, product(setup.ys, setup.vs));
    GridFn kstar = lift_dual(setup, fstar, gstar);
    std::size_t checked = 0, mismatches = 0;
    for (std::size_t i = 0; i < setup.xs.size(); ++i)
        for (std::size_t j = 0; j < setup.us.size(); ++j) {
            RatVec x0s = setup.xs.point(i), u0s = setup.us.point(j);
            DualMin a = t3_dual_min(setup, fstar, gstar, x0s, u0s);
            DualMin b = t21_dual_min(kstar, lift.dw, lift.C, lift.D, x0s, u0s);
            ++checked;
            if (!(a.value == b.value)) ++mismatches;
        }

    out.notes.push_back(std::string("infconv paths equal: ") + (h_equal ? "true" : "false"));
    out.notes.push_back("dual points compared: " + std::to_string(checked) +
                        ", mismatches: " + std::to_string(mismatches));
    out.gap = 0.0;
    out.tolerance = 0.0; // cross-path agreement is exact by contract
    out.verdict = h_equal && mismatches == 0 ? Verdict::Pass : Verdict::Fail;
    return out;
}

CheckOutcome run_qualification(const Scenario& sc, const CheckSpec& cs) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    QCResult qc;
    bool intersect = false, have_intersect = false;
    if (thas(cs.params, "generators")) {
        qc = cone_is_subspace(tget_nested(cs.params, sec, "generators"));
    } else {
        QcCheck q = check_qc_t3(t3_setup(sc, cs.params, sec));
        qc = q.qc;
        intersect = q.domains_intersect;
        have_intersect = true;
    }
    // certificates must re-verify by substitution
    bool certs_ok = true;
    if (qc.is_subspace) {
        for (std::size_t j = 0; j < qc.generators.size() && certs_ok; ++j) {
            RatVec acc(qc.generators[j].size(), Rat(0));
            for (std::size_t i = 0; i < qc.generators.size(); ++i) {
                if (qc.combos[j][i] < 0) certs_ok = false;
                acc = vec_add(acc, vec_scale(qc.combos[j][i], qc.generators[i]));
            }
            if (acc != vec_neg(qc.generators[j])) certs_ok = false;
        }
    } else {
        for (const auto& d : qc.generators)
            if (dot(qc.separating, d) > 0) certs_ok = false;
        if (!qc.failing || dot(qc.separating, qc.generators[*qc.failing]) >= 0) certs_ok = false;
    }
    note_qualification(out, qc);
    if (have_intersect)
        out.notes.push_back(std::string("domains_intersect: ") + (intersect ? "true" : "false"));
    out.notes.push_back(std::string("certificates_verified: ") + (certs_ok ? "true" : "false"));
    std::string expect = tget_str_or(cs.params, "expect", "subspace");
    bool match = expect == "subspace" ? qc.is_subspace : !qc.is_subspace;
    out.verdict = match && certs_ok ? Verdict::Pass : Verdict::Fail;
    return out;
}

CheckOutcome run_representativity(const Scenario& sc, const CheckSpec& cs,
                                  const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    const ReprFn& f = sc.repr(tget_str(cs.params, sec, "repr"));
    double tol = resolve_tol(cs.params, sec, f.closed_form() ? 0.0 : 1e-12, opt.tol_scale);
    out.tolerance = tol;

    ReprCheck rc = is_representative(f, tol);
    out.notes.push_back(std::string("representative: ") + (rc.ok ? "true" : "false"));
    if (!rc.ok && rc.worst) {
        out.witness = point_str(rc.worst->x) + " x " + point_str(rc.worst->xs);
        out.gap = rc.worst->violation;
    }
    bool strong = false;
    if (rc.ok) {
        ReprCheck scg = is_strongly_representative(f, tol);
        strong = scg.ok;
        out.notes.push_back(std::string("strongly_representative: ") +
                            (strong ? "true" : "false"));
        if (!scg.ok && scg.worst) {
            out.witness = point_str(scg.worst->x) + " x " + point_str(scg.worst->xs);
            out.gap = scg.worst->violation;
        }
    }
    if (f.kind() == ReprKind::Example6)
        out.notes.push_back(std::string("property_6_1: ") + (property61(f) ? "true" : "false"));
    if (f.kind() == ReprKind::Example7)
        out.notes.push_back(std::string("property_7_1: ") + (property71(f) ? "true" : "false"));

    std::string expect = tget_str_or(cs.params, "expect", "strong");
    bool pass = false;
    if (expect == "strong")
        pass = rc.ok && strong;
    else if (expect == "representative")
        pass = rc.ok;
    else if (expect == "not_strong")
        pass = rc.ok && !strong;
    else if (expect == "not_representative")
        pass = !rc.ok;
    else
        throw ValidationError("[" + sec + "] bad expect value");
    if (f.kind() == ReprKind::Example6 && pass) pass = property61(f);
    if (f.kind() == ReprKind::Example7 && pass) pass = property71(f);
    out.verdict = pass ? Verdict::Pass : Verdict::Fail;
    return out;
}

CheckOutcome run_lemma14(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    const ReprFn& f = sc.repr(tget_str(cs.params, sec, "repr"));
    double tol = resolve_tol(cs.params, sec, -1.0 / opt.tol_scale, opt.tol_scale); // auto -> -1
    bool ok = lemma14_check(f, tol);
    out.notes.push_back(std::string("graphs_equal: ") + (ok ? "true" : "false"));
    out.notes.push_back("graph_size: " + std::to_string(graph_of(f, tol).size()));
    out.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return out;
}

OperatorGraph graph_param(const Scenario& sc, const TTable& p, const std::string& sec) {
    if (thas(p, "S_repr")) return graph_of(sc.repr(tget_str(p, sec, "S_repr")));
    std::vector<RatVec> rows = tget_nested(p, sec, "S_pairs");
    std::vector<std::pair<RatVec, RatVec>> pairs;
    for (const auto& r : rows) {
        if (r.size() % 2 != 0) throw ValidationError("[" + sec + "] S_pairs rows must be (x,s)");
        int dim = static_cast<int>(r.size() / 2);
        pairs.emplace_back(RatVec(r.begin(), r.begin() + dim), RatVec(r.begin() + dim, r.end()));
    }
    if (pairs.empty()) throw ValidationError("[" + sec + "] empty S_pairs");
    int dim = static_cast<int>(pairs[0].first.size());
    return OperatorGraph::from_pairs(dim, std::move(pairs));
}

void harness_notes(CheckOutcome& out, const HarnessReport& rep) {
    std::size_t ok = 0, vac = 0, skip = 0, cx = 0;
    for (const auto& iv : rep.instances) {
        switch (iv.outcome) {
        case InstanceVerdict::Outcome::Ok:
            ++ok;
            break;
        case InstanceVerdict::Outcome::Vacuous:
            ++vac;
            break;
        case InstanceVerdict::Outcome::Skipped:
            ++skip;
            break;
        case InstanceVerdict::Outcome::Counterexample:
            ++cx;
            break;
        }
    }
    out.notes.push_back("instances: " + std::to_string(rep.instances.size()) +
                        " (ok=" + std::to_string(ok) + ", vacuous=" + std::to_string(vac) +
                        ", skipped=" + std::to_string(skip) +
                        ", counterexamples=" + std::to_string(cx) + ")");
}

CheckOutcome run_theorem11(const Scenario& sc, const CheckSpec& cs) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    OperatorGraph S = graph_param(sc, cs.params, sec);
    std::vector<CcInstance> insts;
    for (const auto& id : tget_strs(cs.params, sec, "instances")) insts.push_back(sc.ccinst(id));
    HarnessReport rep =
        theorem11_harness(S, insts, sc.grid(tget_str(cs.params, sec, "grid_E")),
                          sc.grid(tget_str(cs.params, sec, "grid_Es")));
    harness_notes(out, rep);
    out.verdict = rep.counterexample_free ? Verdict::Pass : Verdict::Fail;
    return out;
}

CheckOutcome run_theorem15(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    std::string variant = tget_str(cs.params, sec, "variant");
    if (variant.size() != 1 || (variant[0] != 'a' && variant[0] != 'b' && variant[0] != 'c'))
        throw ValidationError("[" + sec + "] variant must be a|b|c");
    double tol = resolve_tol(cs.params, sec, -1.0 / opt.tol_scale, opt.tol_scale);
    T15Report rep =
        theorem15_verify(sc.repr(tget_str(cs.params, sec, "f")),
                         sc.repr(tget_str(cs.params, sec, "g")),
                         sc.map(tget_str(cs.params, sec, "map")), variant[0], tol);
    out.notes.push_back(std::string("applicable: ") + (rep.applicable ? "true" : "false"));
    if (!rep.note.empty()) out.notes.push_back(rep.note);
    if (rep.applicable) {
        out.notes.push_back(std::string("graphs_equal: ") + (rep.graphs_equal ? "true" : "false"));
        out.notes.push_back(std::string("strongly_representable: ") +
                            (rep.strongly_repr ? "true" : "false"));
        out.notes.push_back("graph_size: " + std::to_string(rep.extracted.size()));
        out.notes.push_back("graph: " + graph_str(rep.extracted));
    }
    note_qualification(out, rep.qualification);
    std::string expect = tget_str_or(cs.params, "expect", "ok");
    if (expect == "ok")
        out.verdict = rep.applicable && rep.ok ? Verdict::Pass : Verdict::Fail;
    else if (expect == "inapplicable")
        out.verdict = !rep.applicable ? Verdict::Pass : Verdict::Fail;
    else
        throw ValidationError("[" + sec + "] expect must be ok|inapplicable");
    return out;
}

CheckOutcome run_theorem17(const Scenario& sc, const CheckSpec& cs) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    std::vector<CcInstance> insts;
    for (const auto& id : tget_strs(cs.params, sec, "instances")) insts.push_back(sc.ccinst(id));
    HarnessReport rep = theorem17_harness(sc.repr(tget_str(cs.params, sec, "f")), insts);
    harness_notes(out, rep);
    out.verdict = rep.counterexample_free ? Verdict::Pass : Verdict::Fail;
    return out;
}

CheckOutcome run_br_check(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    const ReprFn& f = sc.repr(tget_str(cs.params, sec, "repr"));
    double alpha = to_double(tget_rat(cs.params, sec, "alpha"));
    double beta = to_double(tget_rat(cs.params, sec, "beta"));
    double tol = resolve_tol(cs.params, sec, -1.0 / opt.tol_scale, opt.tol_scale);
    BrResult r = br_check(f, alpha, beta, tget_ratvec(cs.params, sec, "x"),
                          tget_ratvec(cs.params, sec, "xs"), tol);
    out.gap = r.gap;
    const char* status = r.status == BrResult::Status::Witness    ? "witness"
                         : r.status == BrResult::Status::NearMiss ? "near_miss"
                         : r.status == BrResult::Status::Fail     ? "fail"
                                                                  : "vacuous";
    out.notes.push_back(std::string("status: ") + status);
    if (r.witness)
        out.witness = point_str(r.witness->first) + " x " + point_str(r.witness->second);
    std::string expect = tget_str_or(cs.params, "expect", "witness");
    if (r.status == BrResult::Status::Vacuous)
        out.verdict = expect == "vacuous" ? Verdict::Pass : Verdict::Vacuous;
    else if (expect == "witness")
        out.verdict = r.status == BrResult::Status::Witness ? Verdict::Pass : Verdict::Fail;
    else if (expect == "near_miss")
        out.verdict = r.status != BrResult::Status::Fail ? Verdict::Pass : Verdict::Fail;
    else
        throw ValidationError("[" + sec + "] expect must be witness|near_miss|vacuous");
    return out;
}

CheckOutcome run_lemma2(const Scenario& sc, const CheckSpec& cs, const RunOptions& opt,
                        std::size_t check_index) {
    CheckOutcome out{cs.name, cs.type, Verdict::Fail, {}, {}, {}, {}, 0};
    std::string sec = "check." + cs.name;
    std::size_t total = 0, failures = 0;
    if (thas(cs.params, "G")) {
        Lemma2Result r =
            lemma2_sets(tget_nested(cs.params, sec, "G"), sc.map(tget_str(cs.params, sec, "R")),
                        sc.grid(tget_str(cs.params, sec, "box")), opt.max_cells);
        total = 1;
        failures = r.equal ? 0 : 1;
        out.notes.push_back("set_size: " + std::to_string(r.lhs.size()));
    } else {
        long count = tget_long(cs.params, sec, "count");
        std::mt19937_64 rng(opt.seed + 1000003 * (check_index + 1));
        std::uniform_int_distribution<int> coord(-2, 2);
        for (long t = 0; t < count; ++t) {
            int dx = 1 + static_cast<int>(rng() % 2);
            int dz = 1 + static_cast<int>(rng() % 2);
            if (dx + dz > 3) dz = 1;
            RatVec entries(static_cast<std::size_t>(dx) * dz);
            for (auto& e : entries) e = Rat(coord(rng), 1 + static_cast<int>(rng() % 2));
            RatLinMap R(dz, dx, entries);
            std::vector<RatVec> G;
            int npts = 1 + static_cast<int>(rng() % 3);
            for (int i = 0; i < npts; ++i) {
                RatVec p(dx + dz);
                for (auto& c : p) c = Rat(coord(rng), 1 + static_cast<int>(rng() % 2));
                G.push_back(p);
            }
            RatVec origin(dx + dz, Rat(0)), step(dx + dz, Rat(1, 2));
            std::vector<AxisExtent> ext(dx + dz, AxisExtent{-2, 2});
            if (!lemma2_sets(G, R, LatticeGrid(origin, step, ext), opt.max_cells).equal)
                ++failures;
            ++total;
        }
    }
    out.notes.push_back("instances: " + std::to_string(total) +
                        ", failures: " + std::to_string(failures));
    out.gap = static_cast<double>(failures);
    out.tolerance = 0.0;
    out.verdict = failures == 0 ? Verdict::Pass : Verdict::Fail;
    return out;
}

} // namespace

RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
    if (opt.tol_scale <= 0) throw ValidationError("tol-scale must be positive");
    RunResult res;
    std::size_t index = 0;
    for (const auto& cs : sc.checks) {
        ++index;
        if (opt.check_filter && !opt.check_filter->count(cs.name) &&
            !opt.check_filter->count(cs.type))
            continue;
        auto t0 = std::chrono::steady_clock::now();
        CheckOutcome out;
        try {
            if (cs.type == "verify_t3")
                out = run_verify_t3(sc, cs, opt);
            else if (cs.type == "verify_t21")
                out = run_verify_t21(sc, cs, opt);
            else if (cs.type == "cross_path")
                out = run_cross_path(sc, cs, opt);
            else if (cs.type == "qualification")
                out = run_qualification(sc, cs);
            else if (cs.type == "representativity")
                out = run_representativity(sc, cs, opt);
            else if (cs.type == "lemma14")
                out = run_lemma14(sc, cs, opt);
            else if (cs.type == "theorem11")
                out = run_theorem11(sc, cs);
            else if (cs.type == "theorem15")
                out = run_theorem15(sc, cs, opt);
            else if (cs.type == "theorem17")
                out = run_theorem17(sc, cs);
            else if (cs.type == "br_check")
                out = run_br_check(sc, cs, opt);
            else if (cs.type == "lemma2")
                out = run_lemma2(sc, cs, opt, index);
            else
                throw ValidationError("[check." + cs.name + "] unknown check type '" + cs.type +
                                      "'");
        } catch (const ValidationError&) {
            throw; // malformed inputs abort the run (exit 2)
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            out.name = cs.name;
            out.type = cs.type;
            out.verdict = Verdict::Fail;
            out.notes.push_back(std::string("error: ") + e.what());
        }
        auto t1 = std::chrono::steady_clock::now();
        out.timing_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        res.outcomes.push_back(std::move(out));
    }

    for (const auto& o : res.outcomes)
        if (o.verdict == Verdict::Fail) res.exit_code = 1;
    res.paths = write_reports(opt.out_dir, sc.name, res.outcomes, opt.timing, res.exit_code);
    return res;
}

RunResult run_scenario_file(const std::string& path, const RunOptions& opt) {
    return run_scenario(load_scenario(path), opt);
}

} // namespace cav
