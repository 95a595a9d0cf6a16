#include "cav/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "cav/errors.hpp"

namespace cav {

std::string fmt17(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string verdict_str(CheckOutcome::Verdict v) {
    switch (v) {
    case CheckOutcome::Verdict::Pass:
        return "pass";
    case CheckOutcome::Verdict::Fail:
        return "fail";
    case CheckOutcome::Verdict::Vacuous:
        return "vacuous";
    }
    return "?";
}

ReportPaths write_reports(const std::string& out_dir, const std::string& scenario_name,
                          const std::vector<CheckOutcome>& outcomes, bool with_timing,
                          int exit_code) {
    std::filesystem::create_directories(out_dir);
    ReportPaths paths;
    paths.text_path = out_dir + "/" + scenario_name + ".txt";
    paths.json_path = out_dir + "/" + scenario_name + ".json";

    std::size_t passed = 0, failed = 0, vacuous = 0;
    for (const auto& o : outcomes) {
        if (o.verdict == CheckOutcome::Verdict::Pass) ++passed;
        if (o.verdict == CheckOutcome::Verdict::Fail) ++failed;
        if (o.verdict == CheckOutcome::Verdict::Vacuous) ++vacuous;
    }

    {
        std::ofstream txt(paths.text_path, std::ios::binary);
        if (!txt) throw Error("cannot write report file " + paths.text_path);
        txt << "scenario: " << scenario_name << "\n";
        txt << "schema: 1\n\n";
        for (const auto& o : outcomes) {
            txt << "[" << o.name << "] type=" << o.type << " verdict=" << verdict_str(o.verdict)
                << "\n";
            if (o.gap) txt << "  gap: " << fmt17(*o.gap) << "\n";
            if (o.tolerance) txt << "  tolerance: " << fmt17(*o.tolerance) << "\n";
            if (o.witness) txt << "  witness: " << *o.witness << "\n";
            for (const auto& n : o.notes) txt << "  " << n << "\n";
            if (with_timing) txt << "  timing_ms: " << fmt17(o.timing_ms) << "\n";
            txt << "\n";
        }
        txt << "summary: " << outcomes.size() << " checks, " << passed << " passed, " << failed
            << " failed, " << vacuous << " vacuous\n";
        txt << "exit: " << exit_code << "\n";
    }

    {
        nlohmann::ordered_json doc;
        doc["scenario"] = scenario_name;
        doc["schema_version"] = 1;
        doc["checks"] = nlohmann::ordered_json::array();
        for (const auto& o : outcomes) {
            nlohmann::ordered_json c;
            c["name"] = o.name;
            c["type"] = o.type;
            c["verdict"] = verdict_str(o.verdict);
            if (o.gap) c["gap"] = fmt17(*o.gap);
            if (o.tolerance) c["tolerance"] = fmt17(*o.tolerance);
            if (o.witness) c["witness"] = *o.witness;
            c["notes"] = o.notes;
            if (with_timing) c["timing_ms"] = fmt17(o.timing_ms);
            doc["checks"].push_back(std::move(c));
        }
        doc["summary"] = {{"total", outcomes.size()},
                          {"passed", passed},
                          {"failed", failed},
                          {"vacuous", vacuous}};
        doc["exit_code"] = exit_code;
        std::ofstream js(paths.json_path, std::ios::binary);
        if (!js) throw Error("cannot write results file " + paths.json_path);
        js << doc.dump(2) << "\n";
    }
    return paths;
}

} // namespace cav
