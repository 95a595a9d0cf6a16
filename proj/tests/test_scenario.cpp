#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cav/errors.hpp"
#include "cav/runner.hpp"
#include "cav/scenario.hpp"

using namespace cav;

namespace {

const char* kMini = R"(
name = "mini"
lattice_exact = true

[grid.G]
origin = ["0"]
step = ["1/2"]   # rationals welcome
lo = [-2]
hi = [2]

[map.two]
rows = 1
cols = 1
entries = ["2"]

[polytope.K]
vertices = [["-1"], ["1"]]

[fn.q]
kind = "quadratic"
grid = "G"
quad = ["1/2"]

[fn.box]
kind = "indicator_box"
grid = "G"
box_lo = ["-1"]
box_hi = ["1"]

[fn.total]
kind = "sum"
grid = "G"
terms = ["q", "box"]

[repr.sep]
kind = "separable"
phi = "q"
grid_Es = "G"

[ccinst.i1]
kind = "star"
y = ["0"]
C = "K"

[check.rep]
type = "representativity"
repr = "sep"
expect = "strong"
)";

} // namespace

TEST_CASE("toml subset parser fundamentals") {
    TDoc doc = parse_toml_subset("a = 1\nb = \"x\" # comment\n[s.one]\nc = [1, 2, 3]\n"
                                 "d = [[\"1/2\"],\n     [\"3\"]]\n");
    CHECK(doc.root.at("a").scalar == "1");
    CHECK(doc.root.at("b").scalar == "x");
    REQUIRE(doc.sections.size() == 1);
    const TTable& s = doc.sections[0].second;
    CHECK(s.at("c").items.size() == 3);
    CHECK(s.at("d").items[0].items[0].scalar == "1/2");

    CHECK_THROWS_AS(parse_toml_subset("oops"), ParseError);
    CHECK_THROWS_AS(parse_toml_subset("a = [1, 2"), ParseError);
    try {
        parse_toml_subset("x = 1\ny = ");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("scenario builds every entity kind") {
    Scenario sc = parse_scenario(kMini, "mini");
    CHECK(sc.name == "mini");
    CHECK(sc.lattice_exact);
    CHECK(sc.grid("G").size() == 5);
    CHECK(sc.map("two").at(0, 0) == 2);
    CHECK(sc.polytope("K").vertices().size() == 2);
    CHECK(sc.fn("q").at(0).value() == 0.5); // x = -1 at the low corner
    CHECK(sc.fn("q").eval_ext({Rat(-1)}).value() == 0.5);
    CHECK(sc.fn("box").eval_ext({Rat(2)}).is_infinite());
    CHECK(sc.fn("total").eval_ext({Rat(1)}).value() == 0.5);
    CHECK(sc.fn_convex.at("total"));
    CHECK(sc.repr("sep").kind() == ReprKind::Separable);
    CHECK(sc.ccinst("i1").kind == CcInstance::Kind::Star);
    REQUIRE(sc.checks.size() == 1);
    CHECK(sc.checks[0].type == "representativity");

    CHECK_THROWS_AS(sc.grid("nope"), ValidationError);
}

TEST_CASE("vocabulary kinds evaluate exactly") {
    const char* text = R"(
[grid.G2]
origin = ["0", "0"]
step = ["1", "1"]
lo = [-1, -1]
hi = [1, 1]

[polytope.B]
vertices = [["-1", "-1"], ["1", "-1"], ["-1", "1"], ["1", "1"]]

[fn.sup]
kind = "support"
grid = "G2"
polytope = "B"

[fn.maxaff]
kind = "max_affine"
grid = "G2"
slopes = [["1", "0"], ["-1", "0"]]
offsets = ["0", "-1"]

[fn.pair]
kind = "pairing"
grid = "G2"
split = 1

[fn.absf]
kind = "abs"
grid = "G2"
scale = ["2", "1/2"]

[fn.ip]
kind = "indicator_polytope"
grid = "G2"
polytope = "B"
)";
    Scenario sc = parse_scenario(text, "vocab");
    CHECK(sc.fn("sup").eval_ext({Rat(1), Rat(1)}).value() == 2.0);
    CHECK(sc.fn("maxaff").eval_ext({Rat(-1), Rat(0)}).value() == 0.0);
    CHECK(sc.fn("maxaff").eval_ext({Rat(0), Rat(1)}).value() == 0.0);
    CHECK(sc.fn("pair").eval_ext({Rat(1), Rat(-1)}).value() == -1.0);
    CHECK(!sc.fn_convex.at("pair"));
    CHECK(sc.fn("absf").eval_ext({Rat(-1), Rat(1)}).value() == 2.5);
    CHECK(sc.fn("ip").eval_ext({Rat(0), Rat(0)}).value() == 0.0);
    CHECK(sc.fn("ip").eval_ext({Rat(1), Rat(1)}).value() == 0.0);
}

TEST_CASE("bundled scenarios run green and deterministically") {
    RunOptions opt;
    opt.out_dir = "test_reports_a";
    RunResult a = run_scenario_file(SCENARIO_DIR "/indicator_origin.toml", opt);
    CHECK(a.exit_code == 0);
    for (const auto& o : a.outcomes) CHECK(o.verdict == CheckOutcome::Verdict::Pass);

    // gap of the lattice-exact instance is exactly zero
    bool saw_t3 = false;
    for (const auto& o : a.outcomes)
        if (o.type == "verify_t3") {
            saw_t3 = true;
            REQUIRE(o.gap.has_value());
            CHECK(*o.gap == 0.0);
        }
    CHECK(saw_t3);

    opt.out_dir = "test_reports_b";
    RunResult b = run_scenario_file(SCENARIO_DIR "/indicator_origin.toml", opt);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    CHECK(slurp(a.paths.text_path) == slurp(b.paths.text_path));
    CHECK(slurp(a.paths.json_path) == slurp(b.paths.json_path));
    std::filesystem::remove_all("test_reports_a");
    std::filesystem::remove_all("test_reports_b");
}

TEST_CASE("check filter narrows execution") {
    RunOptions opt;
    opt.out_dir = "test_reports_c";
    opt.check_filter = std::set<std::string>{"qualification"};
    RunResult r = run_scenario_file(SCENARIO_DIR "/indicator_origin.toml", opt);
    REQUIRE(r.outcomes.size() == 1);
    CHECK(r.outcomes[0].type == "qualification");
    std::filesystem::remove_all("test_reports_c");
}

TEST_CASE("scale and values vocabulary kinds") {
    const char* text = R"(
[grid.G]
origin = ["0"]
step = ["1"]
lo = [-1]
hi = [1]

[fn.base]
kind = "quadratic"
grid = "G"
quad = ["1"]

[fn.half]
kind = "scale"
grid = "G"
term = "base"
factor = "1/2"

[fn.lits]
kind = "values"
grid = "G"
values = ["3/2", "inf", "-1"]
)";
    Scenario sc = parse_scenario(text, "vocab2");
    CHECK(sc.fn("half").eval_ext({Rat(1)}).value() == 0.5);
    CHECK(sc.fn_convex.at("half"));
    CHECK(sc.fn("lits").eval_ext({Rat(-1)}).value() == 1.5);
    CHECK(sc.fn("lits").eval_ext({Rat(0)}).is_infinite());
    CHECK(sc.fn("lits").eval_ext({Rat(1)}).value() == -1.0);
    CHECK(!sc.fn_convex.at("lits"));
}

TEST_CASE("failing checks exit 1 and tol-scale tightens tolerances") {
    const char* text = R"(
name = "failing"

[grid.E]
origin = ["0"]
step = ["1"]
lo = [-1]
hi = [1]

[grid.EE]
origin = ["0", "0"]
step = ["1", "1"]
lo = [-1, -1]
hi = [1, 1]

[fn.flat]
kind = "values"
grid = "EE"
values = ["2", "2", "2", "2", "2", "2", "2", "2", "2"]

[repr.bad]
kind = "sampled"
fn = "flat"
split = 1

[check.rep]
type = "representativity"
repr = "bad"
expect = "strong"
)";
    Scenario sc = parse_scenario(text, "failing");
    RunOptions opt;
    opt.out_dir = "test_reports_f";
    RunResult r = run_scenario(sc, opt);
    CHECK(r.exit_code == 1);
    CHECK(r.outcomes[0].verdict == CheckOutcome::Verdict::Fail);
    std::filesystem::remove_all("test_reports_f");

    // a crushed tolerance scale makes the quadratic corpus instance fail its
    // strong check
    RunOptions tight;
    tight.out_dir = "test_reports_g";
    tight.tol_scale = 1e-9;
    RunResult q = run_scenario_file(SCENARIO_DIR "/quadratic_id_maps.toml", tight);
    CHECK(q.exit_code == 1);
    std::filesystem::remove_all("test_reports_g");
}
