#include "fuyau/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fuyau/config.hpp"
#include "fuyau/errors.hpp"
#include "fuyau/field_io.hpp"
#include "fuyau/study.hpp"

namespace fuyau {

namespace {

namespace fs = std::filesystem;

std::ofstream open_out(const fs::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + p.string() + " for writing");
    return f;
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream o;
    o << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return o.str();
}

/// Config errors (unreadable, invalid or inconsistent) map to exit 1.
template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const GridMismatch& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::config_error;
    }
}

}  // namespace

int cmd_solve(const std::string& config_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const RunConfig cfg = load_config(config_path);
        const BuiltProblem bp = build_problem(cfg.problem);
        ContinuationOptions ctrl = continuation_options(cfg.solver);

        std::optional<State> start;
        if (ctrl.reverse) {
            if (!bp.phi_star) throw ConfigError("solver.direction: reverse needs the manufactured mu family");
            start = State{*bp.phi_star, 1.0};
        }

        const fs::path dir = output_dir(cfg);
        fs::create_directories(dir);
        std::ofstream log = open_out(dir / "run.log");
        log << timestamp() << " start " << config_path << '\n';

        const double kappa = frozen_equivalence_constant(bp.data.grid.n, bp.data.alpha);
        const ContinuityTrace trace = continuity_run(bp.data, ctrl, start);
        log << timestamp() << " finished success=" << trace.success << '\n';

        if (cfg.output.trace) {
            std::ofstream f = open_out(dir / "trace.jsonl");
            write_trace_jsonl(f, trace);
        }
        const bool have_final = trace.success || !trace.records.empty();
        if (cfg.output.dump_field && trace.success) write_field((dir / "phi.fyfield").string(), trace.final_state.phi);

        nlohmann::ordered_json s;
        s["converged"] = trace.success;
        s["direction"] = ctrl.reverse ? "reverse" : "forward";
        s["last_good_t"] = trace.last_good_t;
        s["message"] = trace.message;
        s["n"] = bp.data.grid.n;
        s["N"] = bp.data.grid.N;
        s["alpha"] = bp.data.alpha;
        s["A"] = bp.data.A;
        s["kappa"] = kappa;
        s["mu_mean_correction"] = bp.mu_mean_correction;
        s["steps"] = trace.records.size();
        if (have_final && !trace.records.empty()) {
            const TraceRecord& last = trace.records.back();
            s["final_t"] = last.t;
            s["final_residual_linf"] = last.residual_linf;
            s["final_residual_sigma_linf"] = kappa * last.residual_linf;
            s["report"] = report_to_json(last.report);
        }
        if (trace.success) s["raw_residual_linf"] = sup_abs(residual_form(trace.final_state, bp.data));
        if (trace.success && bp.phi_star && !ctrl.reverse) {
            s["endpoint_error_linf"] = sup_abs(trace.final_state.phi - *bp.phi_star);
        }
        {
            std::ofstream f = open_out(dir / "summary.json");
            f << s.dump(2) << '\n';
        }

        if (!trace.success) {
            err << "continuation aborted at t = " << trace.last_good_t << ": " << trace.message << '\n';
            return exit_code::aborted;
        }
        out << "converged: " << trace.records.size() << " steps, final residual "
            << trace.records.back().residual_linf << ", output in " << dir.string() << '\n';
        return exit_code::ok;
    });
}

int cmd_check(const CheckOptions& opt, std::ostream& out) {
    const auto results = run_checks(opt, out);
    if (results.empty()) {
        out << "no check matches filter '" << opt.filter << "'\n";
        return exit_code::check_failed;
    }
    int failed = 0;
    for (const auto& r : results) failed += r.passed ? 0 : 1;
    out << results.size() - static_cast<std::size_t>(failed) << "/" << results.size() << " checks passed\n";
    return failed == 0 ? exit_code::ok : exit_code::check_failed;
}

std::vector<double> parse_A_list(const std::string& text) {
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double a = 0.0;
        try {
            a = std::stod(item, &used);
        } catch (const std::exception&) {
            throw ConfigError("A list: cannot parse '" + item + "'");
        }
        if (used != item.size() || !(a > 0.0) || !std::isfinite(a)) throw ConfigError("A list: bad entry '" + item + "'");
        v.push_back(a);
    }
    if (v.empty()) throw ConfigError("A list: empty");
    return v;
}

int cmd_study(const std::string& config_path, const std::vector<double>& A_list, bool reverse, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        if (A_list.empty()) throw ConfigError("A list: empty");
        const RunConfig cfg = load_config(config_path);
        const BuiltProblem bp = build_problem(cfg.problem);
        ContinuationOptions ctrl = continuation_options(cfg.solver);
        ctrl.reverse = false;

        const fs::path dir = output_dir(cfg);
        fs::create_directories(dir);
        std::ofstream log = open_out(dir / "run.log");
        log << timestamp() << " study " << config_path << " rows=" << A_list.size() << '\n';

        const StudySummary s = scaling_study(bp.data, A_list, ctrl, reverse, cfg.seed);
        log << timestamp() << " finished\n";
        {
            std::ofstream f = open_out(dir / "study.csv");
            write_study_csv(f, s);
        }
        write_study_csv(out, s);
        out << "M0 spread " << s.M0_spread << (s.M0_within_factor2 ? " (ok)" : " (exceeds 2)") << ", nondeg spread "
            << s.nondeg_spread << (s.nondeg_within_factor2 ? " (ok)" : " (exceeds 2)") << '\n';
        bool unique_ok = true;
        if (reverse) {
            for (const auto& r : s.rows) {
                if (!r.converged) continue;
                if (!r.uniqueness_diff || !(*r.uniqueness_diff <= 1e-8)) unique_ok = false;
            }
            out << "uniqueness cross-check " << (unique_ok ? "agrees" : "DISAGREES") << " to 1e-8\n";
        }
        if (!s.all_converged) {
            err << "study: at least one run aborted\n";
            return exit_code::aborted;
        }
        return unique_ok ? exit_code::ok : exit_code::aborted;
    });
}

}  // namespace fuyau
