#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "scenario.hpp"

namespace stardeform::cli {

// Command-line argument or environment error. Maps to exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunOptions {
    std::optional<int> order;
    std::optional<std::uint64_t> seed;
    // Adds per-task wall-clock seconds; off by default so that reports are
    // byte-identical across runs.
    bool timing = false;
};

struct RunOutcome {
    nlohmann::ordered_json report;
    bool passed = false;
};

// Reads STARDEFORM_MAX_ORDER. Throws UsageError on a malformed value.
std::optional<int> max_order_from_environment();

// Builds the algebra and fixtures, runs every task in declaration order and
// assembles the report. Throws ScenarioError or UsageError before any task
// runs; task failures and task exceptions end up in the report.
RunOutcome run_scenario(const ScenarioSpec& spec, const RunOptions& options, const std::string& source);

} // namespace stardeform::cli
