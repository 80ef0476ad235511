#include "stardeform/check.hpp"

#include <algorithm>

#include "stardeform/series.hpp"

namespace stardeform {

std::optional<int> CheckReport::first_failing_order() const
{
    std::optional<int> first;
    for (const auto& f : failures) {
        if (f.order && (!first || *f.order < *first)) {
            first = f.order;
        }
    }
    return first;
}

void CheckReport::fail(std::string location, std::optional<int> order, std::string detail)
{
    failures.push_back({std::move(location), order, std::move(detail)});
}

void CheckReport::merge(const CheckReport& other)
{
    cases += other.cases;
    for (const auto& f : other.failures) {
        failures.push_back({other.name.empty() ? f.location : other.name + ": " + f.location, f.order, f.detail});
    }
    notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool expect_equal(CheckReport& report, const std::string& location, const Series& lhs, const Series& rhs)
{
    if (lhs.order() != rhs.order()) {
        report.fail(location, std::nullopt,
                    "truncation orders differ: " + std::to_string(lhs.order()) + " vs " + std::to_string(rhs.order()));
        return false;
    }
    for (int r = 0; r <= lhs.order(); ++r) {
        const auto k = static_cast<std::size_t>(r);
        if (!(lhs[k] == rhs[k])) {
            report.fail(location, r, "residual " + (lhs[k] - rhs[k]).to_string());
            return false;
        }
    }
    return true;
}

} // namespace stardeform
