#pragma once

// Normalized Newton iteration for Φ(·, t) = 0 on resolved fields.

#include <string>
#include <vector>

#include "fuyau/linear_operator.hpp"

namespace fuyau {

/// φ + ln(‖e^{−φ}‖_{L¹}/A), evaluated with a log-sum-exp shift.
ScalarField renormalize(const ScalarField& phi, double A);

/// Π Φ: the form residual restricted to resolved modes.
ScalarField resolved_residual(const State& s, const ProblemData& d);

struct NewtonOptions {
    double tol = 1e-10;  ///< on ‖ΠΦ‖_{L∞}
    int max_iterations = 30;
    int max_halvings = 20;
    LinearSolveOptions linear{};
    /// Probe for a second null direction once, at the first iterate.
    bool probe_kernel = true;
};

enum class NewtonStatus { Converged, MaxIterations, ConeExit, LineSearchFailure, LinearFailure };

std::string to_string(NewtonStatus s);

struct NewtonResult {
    State state;
    NewtonStatus status = NewtonStatus::MaxIterations;
    int iterations = 0;
    /// ‖ΠΦ‖_{L∞} of every accepted iterate, starting with the initial state.
    std::vector<double> residual_history;
    double residual_linf = 0.0;
    /// ‖Φ‖_{L∞} including the unresolved modes.
    double raw_residual_linf = 0.0;
    std::string message;

    bool converged() const { return status == NewtonStatus::Converged; }
};

/// Throws ConeExitError if the (projected, renormalized) initial state is not
/// in Γ₂. Later failures are reported through the status.
NewtonResult newton_solve(const State& s, const ProblemData& d, const NewtonOptions& opt = {});

}  // namespace fuyau
