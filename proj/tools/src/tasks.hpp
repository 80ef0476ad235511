#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scenario.hpp"
#include "stardeform/check.hpp"
#include "stardeform/module.hpp"

namespace stardeform::cli {

enum class ParamType {
    projection,        // name of a projection fixture
    matrix,            // name of a matrix fixture
    elements,          // array of element fixture names
    count,             // non-negative integer
    method,            // "fedosov" or "recursive"
    flag,              // boolean
    coefficient,       // coefficient string
    coefficient_pairs, // array of [f, g] coefficient strings
    string_triples,    // array of [a, b, c] strings
};

struct ParamInfo {
    std::string_view key;
    ParamType type;
    bool required = false;
};

struct TaskInfo {
    std::string_view name;
    std::vector<ParamInfo> params;
};

const std::vector<TaskInfo>& task_catalog();
const TaskInfo* find_task(std::string_view name);

// Parses every coefficient and series string in the task parameters.
// Throws ScenarioError naming the parameter path.
void validate_task_values(const StarAlgebra& alg, const TaskSpec& spec, const std::string& path);

// Algebra, fixtures and the deformed modules built from them. Modules are
// cached per (projection, method) since several tasks share them.
class TaskContext {
public:
    TaskContext(StarAlgebra alg, FixtureSet fixtures) : alg_(std::move(alg)), fixtures_(std::move(fixtures)) {}

    const StarAlgebra& algebra() const { return alg_; }
    const FixtureSet& fixtures() const { return fixtures_; }
    const DeformedModule& module(const std::string& projection, const std::string& method);

private:
    StarAlgebra alg_;
    FixtureSet fixtures_;
    std::map<std::pair<std::string, std::string>, DeformedModule> modules_;
};

struct TaskResult {
    CheckReport report;
    // Set when the task threw instead of producing a verdict.
    std::optional<std::string> error;

    bool passed() const { return !error && report.passed(); }
};

// Runs one task. Random samples come from a generator seeded by seed.
TaskResult run_task(TaskContext& ctx, const TaskSpec& spec, std::uint64_t seed);

} // namespace stardeform::cli
