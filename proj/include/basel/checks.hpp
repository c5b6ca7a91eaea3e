#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace basel {

/// One named expected-vs-actual comparison.
struct CheckResult {
    std::string name;
    double expected = 0.0;
    double actual = 0.0;
    double abs_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

inline CheckResult make_check(std::string name, double expected, double actual,
                              double tolerance) {
    CheckResult r;
    r.name = std::move(name);
    r.expected = expected;
    r.actual = actual;
    r.abs_error = std::abs(expected - actual);
    r.tolerance = tolerance;
    r.passed = r.abs_error <= tolerance;
    return r;
}

/// Placeholder record for a check whose computation threw.
inline CheckResult failed_check(std::string name, double expected, double tolerance) {
    CheckResult r;
    r.name = std::move(name);
    r.expected = expected;
    r.actual = std::numeric_limits<double>::quiet_NaN();
    r.abs_error = std::numeric_limits<double>::infinity();
    r.tolerance = tolerance;
    r.passed = false;
    return r;
}

/// Ordered collection of check results plus summary counters.
struct CheckReport {
    std::vector<CheckResult> results;
    int total = 0;
    int failures = 0;
    double wall_time_seconds = 0.0;
};

inline CheckReport finalize_report(std::vector<CheckResult> results,
                                   double wall_time_seconds) {
    CheckReport rep;
    rep.results = std::move(results);
    rep.total = static_cast<int>(rep.results.size());
    for (const CheckResult& r : rep.results)
        if (!r.passed) ++rep.failures;
    rep.wall_time_seconds = wall_time_seconds;
    return rep;
}

}  // namespace basel
