#include "fuyau/newton.hpp"

#include <cmath>
#include <stdexcept>

#include "fuyau/errors.hpp"
#include "fuyau/hessian.hpp"
#include "fuyau/kernels.hpp"
#include "fuyau/spectral.hpp"

namespace fuyau {

ScalarField renormalize(const ScalarField& phi, double A) {
    if (!(A > 0.0)) throw std::invalid_argument("renormalize: A must be positive");
    const double lo = inf(phi);
    const ScalarField shifted = map(phi, [lo](double x) { return std::exp(-(x - lo)); });
    const double mass = integral(shifted);
    if (!(mass > 0.0) || !std::isfinite(mass)) throw std::overflow_error("renormalize: e^{-phi} is not integrable numerically");
    // ln‖e^{−φ}‖ = −lo + ln ∫ e^{−(φ−lo)}
    const double shift = -lo + std::log(mass) - std::log(A);
    return phi + shift;
}

ScalarField resolved_residual(const State& s, const ProblemData& d) { return project_resolved(residual_form(s, d)); }

std::string to_string(NewtonStatus s) {
    switch (s) {
        case NewtonStatus::Converged: return "converged";
        case NewtonStatus::MaxIterations: return "max_iterations";
        case NewtonStatus::ConeExit: return "cone_exit";
        case NewtonStatus::LineSearchFailure: return "line_search_failure";
        case NewtonStatus::LinearFailure: return "linear_failure";
    }
    return "unknown";
}

namespace {

double l2(const ScalarField& f) { return std::sqrt(inner(f, f)); }

bool in_cone(const State& s, const ProblemData& d) { return field_cone_margin(omega_tilde(s, d)).inside; }

}  // namespace

NewtonResult newton_solve(const State& s0, const ProblemData& d, const NewtonOptions& opt) {
    NewtonResult res;
    State s{renormalize(project_resolved(s0.phi), d.A), s0.t};
    if (!in_cone(s, d)) {
        throw ConeExitError("newton_solve: initial state is outside the Gamma_2 cone");
    }
    ScalarField r = resolved_residual(s, d);
    double r_inf = sup_abs(r);
    res.residual_history.push_back(r_inf);
    for (int it = 0;; ++it) {
        if (r_inf <= opt.tol) {
            res.status = NewtonStatus::Converged;
            break;
        }
        if (it >= opt.max_iterations) {
            res.status = NewtonStatus::MaxIterations;
            res.message = "no convergence after " + std::to_string(it) + " iterations";
            break;
        }
        LinearSolveResult step;
        try {
            const LinearOperator op(s, d);
            LinearSolveOptions lo = opt.linear;
            lo.probe_kernel = opt.probe_kernel && it == 0;
            step = solve_linear(op, -1.0 * r, lo);
        } catch (const LinearSolveError& e) {
            res.status = NewtonStatus::LinearFailure;
            res.message = e.what();
            break;
        }
        const double r_l2 = l2(r);
        double lambda = 1.0;
        bool accepted = false;
        bool any_inside = false;
        for (int h = 0; h <= opt.max_halvings; ++h, lambda *= 0.5) {
            State c{renormalize(s.phi + lambda * step.u, d.A), s.t};
            if (!in_cone(c, d)) continue;
            any_inside = true;
            ScalarField rc = resolved_residual(c, d);
            if (l2(rc) <= (1.0 - 0.5 * lambda) * r_l2) {
                s = std::move(c);
                r = std::move(rc);
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            res.status = any_inside ? NewtonStatus::LineSearchFailure : NewtonStatus::ConeExit;
            res.message = any_inside ? "no sufficient decrease after step halving" : "every trial step left the cone";
            break;
        }
        ++res.iterations;
        r_inf = sup_abs(r);
        res.residual_history.push_back(r_inf);
    }
    res.residual_linf = r_inf;
    res.raw_residual_linf = sup_abs(residual_form(s, d));
    res.state = std::move(s);
    return res;
}

}  // namespace fuyau
