#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cav {

struct CheckOutcome {
    std::string name;
    std::string type;
    enum class Verdict { Pass, Fail, Vacuous };
    Verdict verdict = Verdict::Fail;
    std::optional<double> gap;
    std::optional<double> tolerance;
    std::optional<std::string> witness; // exact rational rendering
    std::vector<std::string> notes;
    double timing_ms = 0.0;
};

// 17 significant digits; the fixed float rendering used everywhere a double
// reaches a report.
std::string fmt17(double v);

std::string verdict_str(CheckOutcome::Verdict v);

struct ReportPaths {
    std::string text_path;
    std::string json_path;
};

// Byte-deterministic text and JSON reports; timing fields only when enabled.
ReportPaths write_reports(const std::string& out_dir, const std::string& scenario_name,
                          const std::vector<CheckOutcome>& outcomes, bool with_timing,
                          int exit_code);

} // namespace cav
