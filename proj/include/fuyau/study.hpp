#pragma once

// Multi-run drivers: the A sweep and the reverse-direction uniqueness cross-check.

#include <cstdint>
#include <string>
#include <vector>

#include "fuyau/continuation.hpp"
#include "fuyau/monitor.hpp"

namespace fuyau {

/// One continuity run per A (ρ, μ, α fixed); report taken at the last accepted state.
StudySummary scaling_study(const ProblemData& d, const std::vector<double>& A_list, const ContinuationOptions& ctrl,
                           bool with_uniqueness = false, std::uint64_t seed = 1);

struct UniquenessResult {
    bool ok = false;  ///< all three runs succeeded
    double sup_diff = 0.0;          ///< sup|φ₁(forward) − φ₁(re-forward)|
    double reverse_t0_error = 0.0;  ///< sup|φ₀(reverse) + ln A|
    double perturbed_restart_diff = 0.0;  ///< sup|Newton(φ₁ + ε·w, t=1) − φ₁|
    State forward_endpoint;
    std::string message;
};

/// Forward 0→1, perturb the endpoint by `perturbation`·(smooth seeded field),
/// re-solve at t = 1, march 1→0, then 0→1 again and compare endpoints.
UniquenessResult uniqueness_crosscheck(const ProblemData& d, const ContinuationOptions& ctrl, std::uint64_t seed,
                                       double perturbation = 0.05);

}  // namespace fuyau
