#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geaoi::cli {

struct ValidateOptions {
    bool quick = false;          ///< analytic checks only
    std::uint64_t cycles = 1'000'000;
    std::uint32_t replications = 8;
    std::uint64_t seed = 0;
    std::string inject_fault;    ///< name of a check to force-fail (report testing)
};

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct ValidateReport {
    std::vector<CheckResult> checks;

    bool passed() const noexcept {
        for (const auto &c : checks)
            if (!c.passed)
                return false;
        return true;
    }
};

/// Cross-checks the analytic formulas, optimizer corners and (unless quick)
/// the simulator against each other.
ValidateReport run_validation(const ValidateOptions &opts);

/// Names of every check in run order; quick mode runs the analytic prefix.
std::vector<std::string> validation_check_names(bool quick);

} // namespace geaoi::cli
