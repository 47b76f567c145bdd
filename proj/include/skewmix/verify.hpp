#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace skewmix {

struct CheckResult {
    std::string name;
    double value = 0.0;   // achieved error / statistic
    double tol = 0.0;     // bound it must stay below
    bool pass = false;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;

    void add(std::string name, double value, double tol);
};

/// Names accepted by run_verify_suite, in canonical order.
const std::vector<std::string>& verify_suite_names();

/// Runs one structural-claims suite: identifiability, gig_limit, hth_limit,
/// reductions or normalization. Deterministic given the seed.
SuiteResult run_verify_suite(const std::string& name, std::uint64_t seed = 20190101);

/// JSON report for a batch of suite results.
std::string suites_to_json(const std::vector<SuiteResult>& results, int indent = 2);

} // namespace skewmix
