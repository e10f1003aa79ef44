#pragma once

// Command implementations behind the `fuyau` executable. Each returns the
// process exit code and writes human-readable progress to `out`/`err`.

#include <iosfwd>
#include <string>
#include <vector>

#include "fuyau/checks.hpp"

namespace fuyau {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int config_error = 1;
inline constexpr int aborted = 2;
inline constexpr int check_failed = 3;
}  // namespace exit_code

/// Continuity run for one config. Writes trace.jsonl, phi.fyfield, summary.json
/// and a run.log sidecar (the only file carrying timestamps) to the output dir.
int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err);

int cmd_check(const CheckOptions& opt, std::ostream& out);

/// A sweep over `A_list` with the config's ρ, μ, α; writes study.csv.
/// With `reverse`, each converged row also gets the uniqueness cross-check.
int cmd_study(const std::string& config_path, const std::vector<double>& A_list, bool reverse, std::ostream& out,
              std::ostream& err);

/// "0.2,0.1,0.05" → {0.2, 0.1, 0.05}; throws ConfigError on malformed entries.
std::vector<double> parse_A_list(const std::string& text);

}  // namespace fuyau
