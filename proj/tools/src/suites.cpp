#include "suites.hpp"

#include <stdexcept>

namespace stardeform::cli {

namespace {

// The Bott projection, the corner projection diag(1, 0), the constant
// unitary diag(i, i) and the reflection 2 P0 - 1.
constexpr const char* kFixtures = R"json({
  "bott": {"kind": "projection", "rows": 2, "entries": [
    "1/(1 + x^2 + p^2)", "(x - i*p)/(1 + x^2 + p^2)",
    "(x + i*p)/(1 + x^2 + p^2)", "(x^2 + p^2)/(1 + x^2 + p^2)"]},
  "corner": {"kind": "projection", "rows": 2, "entries": ["1", "0", "0", "0"]},
  "phase": {"kind": "matrix", "rows": 2, "cols": 2, "entries": ["i", "0", "0", "i"]},
  "reflection": {"kind": "matrix", "rows": 2, "cols": 2, "entries": [
    "(1 - x^2 - p^2)/(1 + x^2 + p^2)", "(2*x - 2*i*p)/(1 + x^2 + p^2)",
    "(2*x + 2*i*p)/(1 + x^2 + p^2)", "(x^2 + p^2 - 1)/(1 + x^2 + p^2)"]}
})json";

constexpr const char* kAlgebraTasks = R"json([
  {"task": "associativity", "params": {"samples": 8}},
  {"task": "hermiticity", "params": {"samples": 8}},
  {"task": "unit", "params": {"samples": 4}},
  {"task": "vey"}
])json";

constexpr const char* kMatrixTasks = R"json([
  {"task": "deform_projection", "label": "deform_projection_fedosov",
   "params": {"projection": "bott", "method": "fedosov"}},
  {"task": "deform_projection", "label": "deform_projection_recursive",
   "params": {"projection": "bott", "method": "recursive"}},
  {"task": "intertwiner", "params": {"projection": "bott"}},
  {"task": "factorization", "params": {"samples": 6}},
  {"task": "deform_unitary", "params": {"unitary": "reflection"}}
])json";

constexpr const char* kModuleTasks = R"json([
  {"task": "module_laws", "params": {"projection": "bott", "samples": 3}},
  {"task": "metric_laws", "params": {"projection": "bott", "samples": 3}},
  {"task": "hermitian_equivalence", "params": {"projection": "bott", "samples": 2}},
  {"task": "deform_isometry", "params": {"projection": "bott", "unitary": "phase", "samples": 2}},
  {"task": "degeneration", "params": {"projection": "bott", "samples": 2}}
])json";

constexpr const char* kSemiclassicalTasks = R"json([
  {"task": "poisson_checks", "params": {"samples": 5, "expected": [["x", "p", "1"], ["x^2", "p", "2*x"]]}},
  {"task": "module_bracket_checks", "params": {"projection": "bott", "samples": 3}},
  {"task": "curvature_compare", "params": {"projection": "bott", "pairs": [["x", "p"], ["x^2", "p"], ["x", "x*p"]]}},
  {"task": "curvature_compare", "label": "curvature_compare_constant", "params": {"projection": "corner"}},
  {"task": "fibred_bracket_checks", "params": {"projection": "bott", "samples": 2}}
])json";

constexpr const char* kMoritaTasks = R"json([
  {"task": "strong_fullness", "label": "strong_fullness_classical", "params": {"projection": "bott"}},
  {"task": "strong_fullness", "label": "strong_fullness_deformed", "params": {"projection": "bott", "deformed": true}},
  {"task": "nice_identities", "label": "nice_identities_classical", "params": {"projection": "bott", "samples": 2}},
  {"task": "nice_identities", "label": "nice_identities_deformed",
   "params": {"projection": "bott", "deformed": true, "samples": 2}},
  {"task": "nice_identities", "label": "nice_identities_corner", "params": {"projection": "corner", "samples": 2}},
  {"task": "theta_adjoint", "label": "theta_adjoint_classical", "params": {"projection": "bott", "samples": 2}},
  {"task": "theta_adjoint", "label": "theta_adjoint_deformed",
   "params": {"projection": "bott", "deformed": true, "samples": 2}}
])json";

const std::vector<std::pair<std::string, const char*>>& suites()
{
    static const std::vector<std::pair<std::string, const char*>> s = {
        {"algebra", kAlgebraTasks},         {"matrix", kMatrixTasks}, {"module", kModuleTasks},
        {"semiclassical", kSemiclassicalTasks}, {"morita", kMoritaTasks},
    };
    return s;
}

} // namespace

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, tasks] : suites()) {
            out.push_back(name);
        }
        out.emplace_back("all");
        return out;
    }();
    return names;
}

ScenarioSpec builtin_suite(const std::string& name)
{
    json tasks = json::array();
    bool found = false;
    for (const auto& [suite, text] : suites()) {
        if (name == suite || name == "all") {
            found = true;
            for (auto& t : json::parse(text)) {
                tasks.push_back(std::move(t));
            }
        }
    }
    if (!found) {
        throw std::out_of_range("unknown suite '" + name + "'");
    }
    json doc = {
        {"name", "suite " + name},
        {"algebra", {{"type", "moyal"}, {"n", 1}, {"variables", {"x", "p"}}}},
        {"order", 3},
        {"fixtures", json::parse(kFixtures)},
        {"tasks", std::move(tasks)},
    };
    return parse_scenario(doc.dump(), name);
}

} // namespace stardeform::cli
