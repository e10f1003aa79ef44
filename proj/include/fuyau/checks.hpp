#pragma once

// Runtime invariant suite behind `fuyau check`.

#include <iosfwd>
#include <string>
#include <vector>

namespace fuyau {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct CheckOptions {
    /// Run only checks whose name contains this substring (empty: all).
    std::string filter;
    /// Multiplies the frozen equivalence constant before comparing it with the
    /// fit; anything other than 1 should make the equivalence check fail.
    double kappa_scale = 1.0;
};

std::vector<std::string> check_names();

/// Runs the selected checks, printing one PASS/FAIL line each to `out`.
std::vector<CheckResult> run_checks(const CheckOptions& opt, std::ostream& out);

}  // namespace fuyau
