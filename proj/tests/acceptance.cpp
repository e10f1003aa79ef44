// Acceptance runner: `fuyau_acceptance [criterion...]` runs the listed criteria
// (all nine by default) and prints one PASS/FAIL line per criterion. Exit status
// is 0 only if every selected criterion passes.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fuyau/assembly.hpp"
#include "fuyau/config.hpp"
#include "fuyau/continuation.hpp"
#include "fuyau/exterior.hpp"
#include "fuyau/hessian.hpp"
#include "fuyau/linear_operator.hpp"
#include "fuyau/monitor.hpp"
#include "fuyau/newton.hpp"
#include "fuyau/spectral.hpp"
#include "fuyau/study.hpp"
#include "oracles/sigma_oracle.hpp"
#include "oracles/trig_derivative.hpp"
#include "oracles/wedge_oracle.hpp"

using namespace fuyau;

namespace {

const std::string kConfigs = FUYAU_CONFIG_DIR;

struct Verdict {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok) { pass = pass && ok; }
};

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2e", v);
    return buf;
}

BuiltProblem shipped(const std::string& name) { return build_problem(load_config(kConfigs + "/" + name).problem); }

ScalarField noise(const GridSpec& g, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> v(g.node_count());
    for (auto& x : v) x = nd(rng);
    return ScalarField(g, std::move(v));
}

// 1. Newton at t = 0 lands on −ln A.
void time_zero(Verdict& v) {
    double worst = 0.0;
    for (const char* name : {"trivial.json", "manufactured_pos.json", "manufactured_neg.json", "sweep.json", "fourier.json",
                             "infeasible.json"}) {
        const BuiltProblem b = shipped(name);
        std::mt19937_64 rng(11);
        const double la = -std::log(b.data.A);
        // The perturbation must keep the start inside the cone, where e^phi = 1/A is small.
        const double amp = 0.05 * std::min(1.0, 1.0 / b.data.A);
        for (const auto& phi : {ScalarField::constant(b.data.grid, la), smooth_random_phi(b.data.grid, rng, amp, la)}) {
            const NewtonResult r = newton_solve(State{phi, 0.0}, b.data);
            v.require(r.converged());
            worst = std::max(worst, sup_abs(r.state.phi + (-la)));
        }
    }
    v.require(worst <= 1e-9);
    v.detail << "max |phi + ln A| = " << sci(worst) << " over 6 configs x 2 starts";
}

// 2. Manufactured solution for both signs of the coupling.
void manufactured(Verdict& v) {
    for (const char* name : {"manufactured_pos.json", "manufactured_neg.json"}) {
        const BuiltProblem b = shipped(name);
        const double mu_mean = std::abs(mean(b.data.mu));
        const ContinuityTrace tr = continuity_run(b.data, ContinuationOptions{});
        const double err = tr.success ? sup_abs(tr.final_state.phi - *b.phi_star) : INFINITY;
        v.require(mu_mean <= 1e-9 && tr.success && err <= 1e-6);
        v.detail << "alpha=" << b.data.alpha << ": |mean mu*|=" << sci(mu_mean) << " converged=" << tr.success
                 << " |phi1-phi*|=" << sci(err) << "; ";
    }
}

// 3. σ-residual = κ_n · form residual, pointwise, with a stable fitted constant.
void equivalence(Verdict& v) {
    for (int n : {2, 3}) {
        const GridSpec g{n, n == 2 ? 16 : 8, 1.0};
        const BuiltProblem b = shipped(n == 2 ? "sweep.json" : "fourier.json");
        const double kappa = frozen_equivalence_constant(n, b.data.alpha);
        double worst = 0.0, spread = 0.0;
        for (double t : {0.0, 0.37, 1.0}) {
            std::mt19937_64 rng(20240611);
            std::vector<double> fits;
            for (int f = 0; f < 10; ++f) {
                const State s{smooth_random_phi(g, rng, resolution_safe_amplitude(g), 0.5), t};
                const ScalarField rs = residual_sigma(s, b.data), rf = residual_form(s, b.data);
                worst = std::max(worst, sup_abs(rs - kappa * rf) / sup_abs(rs));
                fits.push_back(inner(rs, rf) / inner(rf, rf));
            }
            double m = 0.0, var = 0.0;
            for (double k : fits) m += k / 10.0;
            for (double k : fits) var += (k - m) * (k - m) / 10.0;
            spread = std::max(spread, std::sqrt(var) / std::abs(m));
            v.require(std::abs(m - kappa) <= 1e-9 * std::abs(kappa));
        }
        v.require(worst <= 1e-9 && spread <= 1e-8);
        v.detail << "n=" << n << " kappa=" << kappa << " pointwise rel " << sci(worst) << " spread " << sci(spread) << "; ";
    }
}

// 4. Derivatives of σ₂.
void derivatives(Verdict& v) {
    std::mt19937_64 rng(4);
    double fd_worst = 0.0, taylor_worst = 0.0;
    bool diag_exact = true;
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 100; ++trial) {
            const HermMat A = random_hermitian(n, rng), H = random_hermitian(n, rng);
            const double h = 1e-5;
            const double fd = (sigma2_matrix(A + H * h) - sigma2_matrix(A - H * h)) / (2 * h);
            const double an = contract_first(F_first(A), H);
            fd_worst = std::max(fd_worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
            const double ex = sigma2_matrix(A + H);
            const double ty = sigma2_matrix(A) + an + 0.5 * contract_second(n, H, H);
            taylor_worst = std::max(taylor_worst, std::abs(ex - ty) / (1 + std::abs(ex)));

            HermMat D(n);
            for (int i = 0; i < n; ++i) D(i, i) = A(i, i).real();
            const HermMat F = F_first(D);
            for (int i = 0; i < n; ++i) {
                double others = 0.0;
                for (int k = 0; k < n; ++k)
                    if (k != i) others += D(k, k).real();
                diag_exact = diag_exact && F(i, i) == cplx(others);
            }
        }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    for (int l = 0; l < n; ++l) {
                        const double e = (i == j && k == l && i != k) ? 1.0 : ((i == l && k == j && i != k) ? -1.0 : 0.0);
                        diag_exact = diag_exact && F_second(i, j, k, l) == e;
                    }
    }
    v.require(fd_worst <= 1e-7 && taylor_worst <= 1e-12 && diag_exact);
    v.detail << "FD rel " << sci(fd_worst) << ", Taylor rel " << sci(taylor_worst)
             << ", diagonal formulas " << (diag_exact ? "exact" : "MISMATCH");
}

// 5. Adjoint identity and kernel at three states along the manufactured path.
void adjoint(Verdict& v) {
    const BuiltProblem b = shipped("manufactured_pos.json");
    const GridSpec& g = b.data.grid;
    const State s0{ScalarField::constant(g, -std::log(b.data.A)), 0.0};
    const State s1{*b.phi_star, 1.0};
    const NewtonResult mid = newton_solve(State{*b.phi_star, 0.5}, b.data);
    v.require(mid.converged());
    std::mt19937_64 rng(5);
    double adj = 0.0, lstar1 = 0.0, mean_l = 0.0;
    for (const State& s : {s0, mid.state, s1}) {
        const LinearOperator op(s, b.data);
        for (int pair = 0; pair < 20; ++pair) {
            const ScalarField u = noise(g, rng), w = noise(g, rng);
            const ScalarField lu = op.apply_L(u);
            adj = std::max(adj, std::abs(inner(w, lu) - inner(op.apply_Lstar(w), u)) / std::sqrt(inner(w, w) * inner(lu, lu)));
            mean_l = std::max(mean_l, std::abs(integral(lu)) / std::sqrt(inner(lu, lu) * g.volume()));
        }
        lstar1 = std::max(lstar1, sup_abs(op.apply_Lstar(ScalarField::constant(g, 1.0))));
    }
    v.require(adj <= 1e-9 && lstar1 <= 1e-11 && mean_l <= 1e-10);
    v.detail << "adjoint rel " << sci(adj) << ", |L*(1)| " << sci(lstar1) << ", |mean(Lu)| rel " << sci(mean_l)
             << " (t = 0, 0.5, 1)";
}

// 6. Cone membership vs eigenvalue brute force.
void cone(Verdict& v) {
    std::mt19937_64 rng(6);
    int disagreements = 0, tested = 0;
    for (int n : {2, 3}) {
        int used = 0;
        while (used < 1000) {
            const HermMat A = random_hermitian(n, rng) + HermMat::identity(n) * (0.6 * (used % 4));
            const ConeMargin m = in_gamma2(A);
            if (std::min(std::abs(m.sigma1), std::abs(m.sigma2)) <= 1e-10) continue;
            ++used;
            if (m.inside != oracle::in_gamma2(A)) ++disagreements;
        }
        tested += used;
    }
    v.require(disagreements == 0);
    v.detail << disagreements << " disagreements over " << tested << " matrices (n = 2, 3)";
}

// 7. Dyadic A sweep on fixed data.
void a_scaling(Verdict& v) {
    const RunConfig cfg = load_config(kConfigs + "/sweep.json");
    const BuiltProblem b = build_problem(cfg.problem);
    const double a = *cfg.problem.A;
    StudySummary s;
    bool margins = true;
    for (double A : {a, a / 2, a / 4}) {
        ProblemData d = b.data;
        d.A = A;
        const ContinuityTrace tr = continuity_run(d, continuation_options(cfg.solver));
        StudyRow row;
        row.A = A;
        row.converged = tr.success;
        if (!tr.records.empty()) row.report = tr.records.back().report;
        for (const auto& r : tr.records) margins = margins && r.report.cone.sigma1 > 0 && r.report.cone.sigma2 > 0;
        s.rows.push_back(row);
        v.detail << "A=" << A << " M0=" << row.report.M0_emp << " nondeg=" << sci(row.report.nondeg_ratio) << "; ";
    }
    summarize_study(s);
    v.require(s.all_converged && margins && s.M0_within_factor2 && s.nondeg_within_factor2);
    v.detail << "converged=" << s.all_converged << " cone margins>0=" << margins << " M0 spread " << s.M0_spread
             << " nondeg spread " << s.nondeg_spread;
}

// 8. Forward and reverse-then-forward agree at t = 1.
void uniqueness(Verdict& v) {
    const RunConfig cfg = load_config(kConfigs + "/manufactured_pos.json");
    const BuiltProblem b = build_problem(cfg.problem);
    const UniquenessResult u = uniqueness_crosscheck(b.data, continuation_options(cfg.solver), cfg.seed);
    v.require(u.ok && u.sup_diff <= 1e-8);
    v.detail << "ok=" << u.ok << " sup diff " << sci(u.sup_diff) << ", reverse t=0 error " << sci(u.reverse_t0_error)
             << ", perturbed restart diff " << sci(u.perturbed_restart_diff);
    if (!u.message.empty()) v.detail << " (" << u.message << ")";
}

// 9. Spectral derivatives and exterior algebra identities.
void spectral_and_algebra(Verdict& v) {
    double spec = 0.0;
    for (int n : {2, 3}) {
        const GridSpec g{n, n == 2 ? 16 : 8, 1.0};
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            std::mt19937_64 rng(seed);
            const TrigPolynomial p = random_trig(n, g.N / 4, 6, 1.0, rng, 3);
            const ScalarField f = p.sample(g);
            const CovectorField dz = d_holo(f), dzb = d_antiholo(f);
            const HermitianField h = dd_bar(f);
            for (int i = 0; i < n; ++i) {
                const ScalarField fx = oracle::partial(p, 2 * i, 1.0).sample(g), fy = oracle::partial(p, 2 * i + 1, 1.0).sample(g);
                double scale = 1.0, err = 0.0;
                for (std::size_t k = 0; k < g.node_count(); ++k) {
                    const cplx ez = 0.5 * cplx(fx[k], -fy[k]), ezb = 0.5 * cplx(fx[k], fy[k]);
                    err = std::max({err, std::abs(dz[i][k] - ez), std::abs(dzb[i][k] - ezb)});
                    scale = std::max(scale, std::abs(ez));
                }
                spec = std::max(spec, err / scale);
                for (int j = 0; j < n; ++j) {
                    auto d2 = [&](int a, int c) { return oracle::partial(oracle::partial(p, a, 1.0), c, 1.0).sample(g); };
                    const ScalarField re = 0.25 * (d2(2 * i, 2 * j) + d2(2 * i + 1, 2 * j + 1));
                    const ScalarField im = 0.25 * (d2(2 * i, 2 * j + 1) - d2(2 * i + 1, 2 * j));
                    double e2 = 0.0, s2 = 1.0;
                    for (std::size_t k = 0; k < g.node_count(); ++k) {
                        e2 = std::max(e2, std::abs(h(i, j)[k] - cplx(re[k], im[k])));
                        s2 = std::max(s2, std::abs(cplx(re[k], im[k])));
                    }
                    spec = std::max(spec, e2 / s2);
                }
            }
        }
    }
    double alg = 0.0;
    std::mt19937_64 rng(9);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 50; ++trial) {
            const FormPQ a = random_form(n, 1, 0, rng), b = random_form(n, 0, 1, rng), c = random_form(n, 1, 1, rng);
            const FormPQ d = random_form(n, 1, 1, rng);
            alg = std::max(alg, (wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs());
            alg = std::max(alg, (wedge(a, b) + wedge(b, a)).max_abs());
            alg = std::max(alg, (wedge(c, d) - wedge(d, c)).max_abs());
            alg = std::max(alg, (wedge(a, c) - wedge(c, a)).max_abs());
            alg = std::max(alg, oracle::max_diff(oracle::to_words(wedge(c, d)),
                                                 oracle::wedge(oracle::to_words(c), oracle::to_words(d))));
        }
    }
    v.require(spec <= 1e-12 && alg <= 1e-12);
    v.detail << "spectral max rel err " << sci(spec) << ", exterior identities max err " << sci(alg);
}

struct Criterion {
    int id;
    const char* title;
    std::function<void(Verdict&)> run;
};

const std::vector<Criterion> kCriteria = {
    {1, "t=0 exactness", time_zero},
    {2, "manufactured solution", manufactured},
    {3, "residual equivalence", equivalence},
    {4, "derivative tensors", derivatives},
    {5, "adjoint and kernel", adjoint},
    {6, "cone oracle", cone},
    {7, "A-scaling stability", a_scaling},
    {8, "uniqueness cross-check", uniqueness},
    {9, "spectral calculus and exterior algebra", spectral_and_algebra},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
    if (selected.empty())
        for (const auto& c : kCriteria) selected.push_back(c.id);

    int failed = 0;
    for (int id : selected) {
        const Criterion* c = nullptr;
        for (const auto& k : kCriteria)
            if (k.id == id) c = &k;
        if (c == nullptr) {
            std::cerr << "unknown criterion " << id << '\n';
            return 2;
        }
        Verdict v;
        try {
            c->run(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << "exception: " << e.what();
        }
        std::cout << "criterion " << c->id << " " << (v.pass ? "PASS" : "FAIL") << "  " << c->title << ": "
                  << v.detail.str() << std::endl;
        failed += v.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
