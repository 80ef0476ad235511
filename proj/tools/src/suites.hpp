#pragma once

#include <string>
#include <vector>

#include "scenario.hpp"

namespace stardeform::cli {

// algebra, matrix, module, semiclassical, morita, all
const std::vector<std::string>& suite_names();

// Built-in scenario over the Moyal plane with the embedded fixtures. Throws
// std::out_of_range for an unknown name.
ScenarioSpec builtin_suite(const std::string& name);

} // namespace stardeform::cli
