#pragma once

// Self-check suite behind `esdlab verify`: cross-checks every fast path
// against its independent route and reports the worst error seen.

#include <cstdint>
#include <string>
#include <vector>

namespace esdlab {

enum class CheckStatus { Pass, Fail, NotApplicable };

const char* to_string(CheckStatus status);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    double max_error = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 20080101;
    /// Added to the X^1 coefficient of a(X) in the analytic propagator before
    /// it is compared against RK4. Nonzero values must make the check fail.
    double propagator_perturbation = 0.0;
    /// Temperatures for the finite-death check; nbar = 0 is reported as not
    /// applicable.
    std::vector<double> theorem_nbar = {0.0, 0.1, 1.0, 10.0};
};

struct VerifyReport {
    std::vector<CheckResult> checks;

    bool passed() const noexcept;
};

VerifyReport run_verify(const VerifyOptions& options = {});

std::string format_report(const VerifyReport& report);

}  // namespace esdlab
