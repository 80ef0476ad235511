#include "runner.hpp"

#include <chrono>
#include <cstdlib>
#include <string_view>

#include "tasks.hpp"

#ifndef STARDEFORM_VERSION
#define STARDEFORM_VERSION "unknown"
#endif

namespace stardeform::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Per-task seed, so that adding a task does not shift the samples of the
// tasks before it.
std::uint64_t task_seed(std::uint64_t seed, std::size_t index)
{
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ojson task_json(const TaskSpec& spec, const TaskResult& result)
{
    ojson t;
    t["name"] = spec.label;
    t["task"] = spec.task;
    t["status"] = result.error ? "error" : (result.report.passed() ? "pass" : "fail");
    t["cases"] = result.report.cases;
    const auto first = result.report.first_failing_order();
    t["first_failing_order"] = first ? ojson(*first) : ojson(nullptr);
    ojson failures = ojson::array();
    for (const auto& f : result.report.failures) {
        ojson e;
        e["location"] = f.location;
        e["order"] = f.order ? ojson(*f.order) : ojson(nullptr);
        e["detail"] = f.detail;
        failures.push_back(std::move(e));
    }
    t["failures"] = std::move(failures);
    if (result.error) {
        t["error"] = *result.error;
    }
    t["notes"] = result.report.notes;
    return t;
}

} // namespace

std::optional<int> max_order_from_environment()
{
    const char* raw = std::getenv("STARDEFORM_MAX_ORDER");
    if (!raw || !*raw) {
        return std::nullopt;
    }
    const std::string_view text(raw);
    int value = 0;
    for (char c : text) {
        if (c < '0' || c > '9' || value > 1000) {
            throw UsageError("STARDEFORM_MAX_ORDER must be a non-negative integer, got '" + std::string(text) + "'");
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

RunOutcome run_scenario(const ScenarioSpec& spec, const RunOptions& options, const std::string& source)
{
    std::vector<std::string> notes;
    int order = options.order.value_or(spec.order);
    if (order < 0 || order > kMaxOrder) {
        throw UsageError("order must lie in 0.." + std::to_string(kMaxOrder) + ", got " + std::to_string(order));
    }
    if (const auto cap = max_order_from_environment(); cap && order > *cap) {
        notes.push_back("order capped from " + std::to_string(order) + " to " + std::to_string(*cap) +
                        " by STARDEFORM_MAX_ORDER");
        order = *cap;
    }
    const std::uint64_t seed = options.seed.value_or(spec.seed);

    StarAlgebra alg = build_algebra(spec.algebra, order);
    FixtureSet fixtures(alg, spec.fixtures);
    for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
        validate_task_values(alg, spec.tasks[i], "/tasks/" + std::to_string(i));
    }
    TaskContext ctx(std::move(alg), std::move(fixtures));

    ojson tasks = ojson::array();
    std::size_t passed = 0;
    std::size_t failed = 0;
    std::size_t errors = 0;
    for (std::size_t i = 0; i < spec.tasks.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        const TaskResult result = run_task(ctx, spec.tasks[i], task_seed(seed, i));
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        ojson t = task_json(spec.tasks[i], result);
        if (options.timing) {
            t["seconds"] = elapsed.count();
        }
        tasks.push_back(std::move(t));
        if (result.error) {
            ++errors;
        } else if (result.report.passed()) {
            ++passed;
        } else {
            ++failed;
        }
    }

    RunOutcome out;
    out.passed = failed == 0 && errors == 0;
    ojson& r = out.report;
    r["tool"] = "stardeform";
    r["version"] = STARDEFORM_VERSION;
    r["source"] = source;
    r["scenario"] = spec.name;
    r["seed"] = seed;
    r["order"] = order;
    r["algebra"] = ctx.algebra().kind();
    r["status"] = out.passed ? "pass" : "fail";
    r["summary"] = {{"tasks", spec.tasks.size()}, {"passed", passed}, {"failed", failed}, {"errors", errors}};
    r["notes"] = notes;
    r["tasks"] = std::move(tasks);
    return out;
}

} // namespace stardeform::cli
