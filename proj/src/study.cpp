#include "fuyau/study.hpp"

#include <cmath>
#include <random>

#include "fuyau/errors.hpp"

namespace fuyau {

StudySummary scaling_study(const ProblemData& base, const std::vector<double>& A_list, const ContinuationOptions& ctrl,
                           bool with_uniqueness, std::uint64_t seed) {
    if (A_list.empty()) throw std::invalid_argument("scaling_study: empty A list");
    StudySummary s;
    for (double A : A_list) {
        ProblemData d = base;
        d.A = A;
        StudyRow row;
        row.A = A;
        const ContinuityTrace tr = continuity_run(d, ctrl);
        row.converged = tr.success;
        row.message = tr.message;
        row.steps = static_cast<int>(tr.records.size());
        if (!tr.records.empty()) {
            row.report = tr.records.back().report;
            row.residual_linf = tr.records.back().residual_linf;
        }
        if (with_uniqueness && tr.success) {
            const UniquenessResult u = uniqueness_crosscheck(d, ctrl, seed);
            if (u.ok) row.uniqueness_diff = u.sup_diff;
        }
        s.rows.push_back(std::move(row));
    }
    summarize_study(s);
    return s;
}

UniquenessResult uniqueness_crosscheck(const ProblemData& d, const ContinuationOptions& ctrl, std::uint64_t seed,
                                       double perturbation) {
    UniquenessResult u;
    ContinuationOptions fwd = ctrl;
    fwd.reverse = false;
    const ContinuityTrace a = continuity_run(d, fwd);
    if (!a.success) {
        u.message = "forward run failed: " + a.message;
        return u;
    }
    u.forward_endpoint = a.final_state;

    std::mt19937_64 rng(seed);
    const ScalarField w = smooth_random_phi(d.grid, rng, 1.0);
    const State perturbed{a.final_state.phi + perturbation * w, 1.0};
    NewtonResult restart;
    try {
        restart = newton_solve(perturbed, d, ctrl.newton);
    } catch (const ConeExitError& e) {
        u.message = std::string("perturbed restart: ") + e.what();
        return u;
    }
    if (!restart.converged()) {
        u.message = "perturbed restart did not converge: " + to_string(restart.status);
        return u;
    }
    u.perturbed_restart_diff = sup_abs(restart.state.phi - a.final_state.phi);

    ContinuationOptions rev = ctrl;
    rev.reverse = true;
    rev.check_delta0 = false;
    const ContinuityTrace b = continuity_run(d, rev, restart.state);
    if (!b.success) {
        u.message = "reverse run failed: " + b.message;
        return u;
    }
    u.reverse_t0_error = sup_abs(b.final_state.phi + std::log(d.A));

    const ContinuityTrace c = continuity_run(d, fwd, State{b.final_state.phi, 0.0});
    if (!c.success) {
        u.message = "re-forward run failed: " + c.message;
        return u;
    }
    u.sup_diff = sup_abs(c.final_state.phi - a.final_state.phi);
    u.ok = true;
    return u;
}

}  // namespace fuyau
