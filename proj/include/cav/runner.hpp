#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>

#include "cav/report.hpp"
#include "cav/scenario.hpp"

namespace cav {

struct RunOptions {
    std::string out_dir = "reports";
    double tol_scale = 1.0;
    std::optional<std::set<std::string>> check_filter; // names or types
    std::uint64_t seed = 20080213;
    std::size_t max_cells = std::size_t{1} << 22;
    bool timing = false;
};

struct RunResult {
    int exit_code = 0; // 0 pass, 1 check failure, 2 input error
    std::vector<CheckOutcome> outcomes;
    ReportPaths paths;
};

// Executes the scenario's checks in declaration order and writes the reports.
// Parse/validation problems throw (the CLI maps them to exit code 2); check
// failures are report content.
RunResult run_scenario(const Scenario& sc, const RunOptions& opt);
RunResult run_scenario_file(const std::string& path, const RunOptions& opt);

} // namespace cav
