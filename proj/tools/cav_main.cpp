#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cav/errors.hpp"
#include "cav/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cav: scenario-driven convex-analysis verification"};
    app.require_subcommand(1);

    std::string file;
    cav::RunOptions opt;
    std::string checks_csv;

    CLI::App* run = app.add_subcommand("run", "run a scenario file and write its reports");
    run->add_option("file", file, "scenario file (TOML-style)")->required();
    run->add_option("--out", opt.out_dir, "report output directory (default: reports)");
    run->add_option("--tol-scale", opt.tol_scale, "multiplies all instance tolerances");
    run->add_option("--checks", checks_csv, "comma-separated check names or types to run");
    run->add_option("--seed", opt.seed, "seed for randomized property checks");
    run->add_option("--max-cells", opt.max_cells, "product-grid size cap (default 2^22)");
    run->add_flag("--timing", opt.timing, "include timing fields in the reports");

    CLI11_PARSE(app, argc, argv);

    if (!checks_csv.empty()) {
        std::set<std::string> filter;
        std::stringstream ss(checks_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) filter.insert(item);
        opt.check_filter = std::move(filter);
    }

    try {
        cav::RunResult res = cav::run_scenario_file(file, opt);
        for (const auto& o : res.outcomes)
            std::cout << "[" << cav::verdict_str(o.verdict) << "] " << o.name << " (" << o.type
                      << ")\n";
        std::cout << "report: " << res.paths.text_path << "\n";
        std::cout << "results: " << res.paths.json_path << "\n";
        return res.exit_code;
    } catch (const cav::ParseError& e) {
        std::cerr << "parse error at line " << e.line << ": " << e.what() << "\n";
        return 2;
    } catch (const cav::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
