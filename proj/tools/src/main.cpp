#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "runner.hpp"
#include "suites.hpp"

using namespace stardeform::cli;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

void print_summary(const nlohmann::ordered_json& report, std::ostream& out)
{
    for (const auto& t : report["tasks"]) {
        const std::string status = t["status"];
        out << (status == "pass" ? "PASS " : status == "fail" ? "FAIL " : "ERROR") << " "
            << t["name"].get<std::string>() << " (" << t["cases"].get<std::size_t>() << " cases)";
        if (!t["failures"].empty()) {
            out << ": " << t["failures"][0]["location"].get<std::string>() << ": "
                << t["failures"][0]["detail"].get<std::string>();
        }
        if (t.contains("error")) {
            out << ": " << t["error"].get<std::string>();
        }
        out << "\n";
    }
    for (const auto& n : report["notes"]) {
        out << "note: " << n.get<std::string>() << "\n";
    }
    const auto& s = report["summary"];
    out << report["status"].get<std::string>() << ": " << s["passed"].get<std::size_t>() << " passed, "
        << s["failed"].get<std::size_t>() << " failed, " << s["errors"].get<std::size_t>() << " errors\n";
}

// Writes the report to path, or to stdout when no path is given; the
// human-readable summary then goes to stderr.
int emit(const RunOutcome& outcome, const std::string& path)
{
    const std::string text = outcome.report.dump(2) + "\n";
    if (path.empty()) {
        std::cout << text;
        print_summary(outcome.report, std::cerr);
    } else {
        std::ofstream f(path, std::ios::binary);
        if (!f || !(f << text) || !f.flush()) {
            std::cerr << "stardeform: cannot write report to " << path << "\n";
            return kExitUsage;
        }
        print_summary(outcome.report, std::cout);
    }
    return outcome.passed ? kExitPass : kExitFail;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact order-by-order verification of deformed projections, modules and their identities"};
    app.require_subcommand(1);

    std::string file;
    std::string suite;
    std::string report_path;
    int order = -1;
    std::uint64_t seed = 0;
    bool timing = false;

    auto* run = app.add_subcommand("run", "Run the tasks of a scenario file");
    run->add_option("file", file, "Scenario JSON")->required();
    run->add_option("--order", order, "Truncation order N (0..6)");
    run->add_option("--seed", seed, "Seed for random samples");
    run->add_option("--report", report_path, "Write the JSON report here instead of stdout");
    run->add_flag("--timing", timing, "Record per-task seconds in the report");

    auto* check = app.add_subcommand("check", "Run a built-in property suite");
    check->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    check->add_option("--order", order, "Truncation order N (0..6)");
    check->add_option("--seed", seed, "Seed for random samples");
    check->add_option("--report", report_path, "Write the JSON report here instead of stdout");
    check->add_flag("--timing", timing, "Record per-task seconds in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitPass : kExitUsage;
    }

    RunOptions options;
    options.timing = timing;
    if (order >= 0 || (run->count("--order") + check->count("--order")) > 0) {
        options.order = order;
    }
    if (run->count("--seed") + check->count("--seed") > 0) {
        options.seed = seed;
    }

    try {
        if (*run) {
            const ScenarioSpec spec = load_scenario_file(file);
            try {
                return emit(run_scenario(spec, options, file), report_path);
            } catch (const ScenarioError& e) {
                throw ScenarioError(file + ": " + e.what());
            }
        }
        const ScenarioSpec spec = builtin_suite(suite);
        return emit(run_scenario(spec, options, "suite:" + suite), report_path);
    } catch (const ScenarioError& e) {
        std::cerr << "stardeform: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "stardeform: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "stardeform: " << e.what() << "\n";
        return kExitUsage;
    }
}
