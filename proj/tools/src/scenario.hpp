#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stardeform/star_matrix.hpp"

namespace stardeform::cli {

using json = nlohmann::json;

// Malformed scenario: bad JSON, schema violations, unknown tasks or
// fixtures, coefficient strings that do not parse. Maps to exit code 2.
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxOrder = 6;

struct TaskSpec {
    // Label used in the report; defaults to the task name.
    std::string label;
    std::string task;
    json params;
};

enum class FixtureKind { projection, matrix, element, series };

struct FixtureSpec {
    FixtureKind kind;
    std::size_t rows = 1;
    std::size_t cols = 1;
    std::vector<std::string> entries{};
    // JSON path of the fixture, for error messages.
    std::string path{};
};

// A scenario as written in the file, before any coefficient is parsed.
struct ScenarioSpec {
    std::string name;
    json algebra;
    int order = 3;
    std::uint64_t seed = 0;
    std::map<std::string, FixtureSpec> fixtures;
    std::vector<TaskSpec> tasks;
};

// Parses and validates the JSON document. Syntax errors carry line and
// column; every other error names the offending JSON path.
ScenarioSpec parse_scenario(const std::string& text, const std::string& fallback_name);
ScenarioSpec load_scenario_file(const std::string& path);

// Algebra described by the "algebra" block, truncated at order.
StarAlgebra build_algebra(const json& algebra, int order);

// Parsed fixtures over a concrete algebra.
class FixtureSet {
public:
    FixtureSet(const StarAlgebra& alg, const std::map<std::string, FixtureSpec>& specs);

    const StarMatrix& matrix(const std::string& name) const;
    const StarMatrix& element(const std::string& name) const;
    const Series& series(const std::string& name) const;
    bool contains(const std::string& name) const { return values_.count(name) > 0; }

private:
    struct Value {
        FixtureKind kind;
        StarMatrix matrix;
    };
    const Value& get(const std::string& name) const;

    std::map<std::string, Value> values_;
};

} // namespace stardeform::cli
