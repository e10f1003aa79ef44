#pragma once

// Adaptive marching in t with a secant predictor and Newton corrector.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fuyau/monitor.hpp"
#include "fuyau/newton.hpp"

namespace fuyau {

struct ContinuationOptions {
    double dt0 = 0.1;
    double dt_min = 1e-4;
    double dt_max = 0.5;
    /// A Newton solve with at most this many iterations counts as easy and doubles Δt.
    int easy_iterations = 3;
    /// March from t = 1 down to t = 0 (needs a start state at t = 1).
    bool reverse = false;
    /// Abort before marching if sup e^{−φ} at the start exceeds δ₀.
    bool check_delta0 = true;
    NewtonOptions newton{};
};

struct TraceRecord {
    double t = 0.0;
    int newton_iters = 0;
    double residual_linf = 0.0;
    double dt = 0.0;
    EstimateReport report;
};

struct ContinuityTrace {
    std::vector<TraceRecord> records;
    bool success = false;
    double last_good_t = 0.0;
    std::string message;
    State final_state;
};

/// Forward: starts from φ = −ln A at t = 0. Reverse: `start` must be given at t = 1.
ContinuityTrace continuity_run(const ProblemData& d, const ContinuationOptions& ctrl,
                               const std::optional<State>& start = std::nullopt);

/// One JSON object per line: {t, newton_iters, residual_linf, dt, report, cone}.
void write_trace_jsonl(std::ostream& os, const ContinuityTrace& trace);

}  // namespace fuyau
