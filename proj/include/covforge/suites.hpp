#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covforge {

/// One named identity claim and whether it held exactly.
struct CheckResult {
    std::string name;
    bool passed = false;
    /// Recorded scalar or other short remark; empty when there is none.
    std::string detail;
};

/// "gordan", "lowr", "twisted-cubic", "polar", "lemmaE".
const std::vector<std::string>& identity_suite_names();

/// Runs one suite. Random inputs (lemmaE) are drawn from `seed`.
/// Throws DomainError for an unknown suite name.
std::vector<CheckResult> run_identity_suite(const std::string& name, std::uint64_t seed = 20240611);

struct AgreementReport {
    int r = 0;
    int d = 0;
    int mu = 0;
    int trials = 0;
    /// Trials where all three tests said "power".
    int powers = 0;
    int disagreements = 0;
};

/// Compares, on `trials` random nonzero rational d-ics, the three power
/// criteria: nontrivial alpha kernel in order r, vanishing of Hilb_{r,d},
/// and perfect_power_decompose with mu = d / gcd(r, d). Half the trials are
/// scaled mu-th powers, the rest unstructured forms.
AgreementReport three_way_agreement(int r, int d, int trials, std::uint64_t seed = 20240611);

} // namespace covforge
