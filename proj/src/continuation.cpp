#include "fuyau/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <ostream>

#include "fuyau/errors.hpp"

namespace fuyau {

namespace {

TraceRecord make_record(const NewtonResult& nr, const ProblemData& d, double dt) {
    TraceRecord rec;
    rec.t = nr.state.t;
    rec.newton_iters = nr.iterations;
    rec.residual_linf = nr.residual_linf;
    rec.dt = dt;
    rec.report = report(nr.state, d);
    return rec;
}


}  // namespace

ContinuityTrace continuity_run(const ProblemData& d, const ContinuationOptions& ctrl, const std::optional<State>& start) {
    d.validate();
    ContinuityTrace trace;
    const double t_begin = ctrl.reverse ? 1.0 : 0.0;
    const double t_end = ctrl.reverse ? 0.0 : 1.0;
    const double dir = ctrl.reverse ? -1.0 : 1.0;
    trace.last_good_t = t_begin;

    State init;
    if (start) {
        init = *start;
        init.t = t_begin;
    } else {
        if (ctrl.reverse) throw std::invalid_argument("continuity_run: reverse marching needs a start state at t = 1");
        init = State{ScalarField::constant(d.grid, -std::log(d.A)), 0.0};
    }

    if (ctrl.check_delta0) {
        const double d0 = delta0_bound(d.alpha, rho_c0_norm(d.rho));
        const double sup_w = sup(exp(-1.0 * init.phi));
        if (sup_w > d0) {
            trace.message = "start state violates the delta0 condition: sup e^{-phi} = " + std::to_string(sup_w) +
                            " > delta0 = " + std::to_string(d0);
            return trace;
        }
    }

    NewtonResult cur;
    try {
        cur = newton_solve(init, d, ctrl.newton);
    } catch (const ConeExitError& e) {
        trace.message = std::string("start state: ") + e.what();
        return trace;
    }
    if (!cur.converged()) {
        trace.message = "start state: Newton " + to_string(cur.status) + " (" + cur.message + ")";
        return trace;
    }
    trace.records.push_back(make_record(cur, d, 0.0));
    State prev = cur.state;
    double prev_dt = 0.0;
    bool have_prev = false;
    double dt = ctrl.dt0;
    double t = t_begin;

    while (dir * (t_end - t) > 0.0) {
        if (dt < ctrl.dt_min) {
            trace.message = "step size fell below dt_min at t = " + std::to_string(t);
            trace.final_state = cur.state;
            return trace;
        }
        double t_next = t + dir * dt;
        if (dir * (t_next - t_end) > 0.0 || std::abs(t_end - t_next) < 1e-12) t_next = t_end;
        const double step = std::abs(t_next - t);

        std::vector<State> guesses;
        if (have_prev && prev_dt > 0.0) {
            const double ratio = step / prev_dt;
            guesses.push_back(State{cur.state.phi + ratio * (cur.state.phi - prev.phi), t_next});
        }
        guesses.push_back(State{cur.state.phi, t_next});

        NewtonResult next;
        bool ok = false;
        for (const auto& g : guesses) {
            try {
                next = newton_solve(g, d, ctrl.newton);
            } catch (const ConeExitError&) {
                continue;
            } catch (const KernelDegeneracyError& e) {
                trace.message = "linearization degenerate near t = " + std::to_string(t_next) + ": " + e.what();
                trace.final_state = cur.state;
                return trace;
            }
            if (next.converged()) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            dt *= 0.5;
            continue;
        }
        prev = cur.state;
        prev_dt = step;
        have_prev = true;
        cur = std::move(next);
        t = t_next;
        trace.records.push_back(make_record(cur, d, step));
        trace.last_good_t = t;
        if (cur.iterations <= ctrl.easy_iterations) dt = std::min(2.0 * dt, ctrl.dt_max);
    }
    trace.success = true;
    trace.final_state = cur.state;
    return trace;
}

void write_trace_jsonl(std::ostream& os, const ContinuityTrace& trace) {
    for (const auto& r : trace.records) {
        nlohmann::ordered_json j;
        j["t"] = r.t;
        j["newton_iters"] = r.newton_iters;
        j["residual_linf"] = r.residual_linf;
        j["dt"] = r.dt;
        j["report"] = report_to_json(r.report);
        j["cone"] = {{"sigma1_min", r.report.cone.sigma1}, {"sigma2_min", r.report.cone.sigma2}};
        os << j.dump() << '\n';
    }
}

}  // namespace fuyau
