#pragma once

#include <string>
#include <vector>

namespace mzi {

struct CheckResult {
    std::string name;
    bool pass = false;
    // informational findings report diagnostics (e.g. which closed-form
    // variant is the self-consistent one) and never fail the suite
    bool informational = false;
    double max_residual = 0.0;
    std::string detail;
};

struct VerifyReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool all_pass = true;  // ignores informational entries
};

// Cross-checks the analytic pipeline against the Fock simulator and the
// Fisher-information bound. suite is "quick" (subsampled grids, < 2 min)
// or "full" (ops = 3 and high-cutoff oracle runs included).
VerifyReport verify_consistency(const std::string& suite);

std::string report_to_json(const VerifyReport& report);

} // namespace mzi
