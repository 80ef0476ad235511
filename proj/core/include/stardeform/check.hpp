#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace stardeform {

class Series;
class StarMatrix;

struct CheckFailure {
    // Sample index, matrix entry or basis index that failed.
    std::string location;
    // First l-order at which the two sides differ, when meaningful.
    std::optional<int> order;
    std::string detail;
};

// Outcome of a verification routine. Failures are data, not exceptions.
struct CheckReport {
    std::string name;
    std::size_t cases = 0;
    std::vector<CheckFailure> failures{};
    std::vector<std::string> notes{};

    bool passed() const { return failures.empty(); }
    std::optional<int> first_failing_order() const;

    void fail(std::string location, std::optional<int> order, std::string detail);
    void merge(const CheckReport& other);
};

// Exact comparison lhs == rhs order by order. Records the first differing
// order and returns whether the two agree.
bool expect_equal(CheckReport& report, const std::string& location, const Series& lhs, const Series& rhs);
bool expect_equal(CheckReport& report, const std::string& location, const StarMatrix& lhs, const StarMatrix& rhs);

} // namespace stardeform
