#include "fuyau/checks.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "fuyau/assembly.hpp"
#include "fuyau/exterior.hpp"
#include "fuyau/hessian.hpp"
#include "fuyau/linear_operator.hpp"
#include "fuyau/newton.hpp"
#include "fuyau/spectral.hpp"
#include "fuyau/trig.hpp"

namespace fuyau {

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;
};

std::string sci(double v) {
    std::ostringstream o;
    o << std::scientific << std::setprecision(2) << v;
    return o.str();
}

double choose(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// ∂/∂x_axis of a trig polynomial at a point, by the product rule.
double trig_partial(const TrigPolynomial& p, int axis, std::span<const double> x, double period) {
    const double w = 2.0 * std::numbers::pi / period;
    double s = 0.0;
    for (const auto& t : p.terms) {
        for (std::size_t d = 0; d < t.factors.size(); ++d) {
            if (t.factors[d].axis != axis) continue;
            double prod = t.amp;
            for (std::size_t f = 0; f < t.factors.size(); ++f) {
                const auto& fac = t.factors[f];
                const double arg = w * fac.k * x[static_cast<std::size_t>(fac.axis)];
                if (f == d) {
                    prod *= fac.fn == TrigFn::Sin ? w * fac.k * std::cos(arg) : -w * fac.k * std::sin(arg);
                } else {
                    prod *= fac.fn == TrigFn::Sin ? std::sin(arg) : std::cos(arg);
                }
            }
            s += prod;
        }
    }
    return s;
}

void check_convention(Outcome& o) {
    for (int n : {2, 3}) {
        const double k = sigma2_convention_constant(n);
        const double top = top_ratio(omega_power(n, n))[0].real();
        o.detail << "n=" << n << " kappa2=" << k << " ";
        if (std::abs(k - 1.0) > 1e-14 || std::abs(top - 1.0) > 1e-14) o.ok = false;
    }
}

void check_mixed_identity(Outcome& o) {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int n : {2, 3}) {
        const FormPQ wn2 = omega_power(n, n - 2);
        for (int trial = 0; trial < 100; ++trial) {
            const HermMat A = random_hermitian(n, rng), B = random_hermitian(n, rng);
            const double lhs = choose(n, 2) * top_ratio(wedge(wedge(herm_to_form(A), herm_to_form(B)), wn2))[0].real();
            const double rhs = 0.5 * (A.trace().real() * B.trace().real() - A.matmul(B).trace().real());
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(rhs)));
        }
    }
    o.ok = worst <= 1e-12;
    o.detail << "max rel err " << sci(worst) << " over 200 pairs";
}

void check_algebra(Outcome& o) {
    std::mt19937_64 rng(12);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const FormPQ a = random_form(3, 1, 0, rng), b = random_form(3, 0, 1, rng), c = random_form(3, 1, 1, rng);
        const FormPQ l = wedge(wedge(a, b), c), r = wedge(a, wedge(b, c));
        worst = std::max(worst, (l - r).max_abs());
        const FormPQ x = random_form(3, 1, 1, rng), y = random_form(3, 1, 0, rng);
        // deg x = 2, deg y = 1: x∧y = y∧x
        worst = std::max(worst, (wedge(x, y) - wedge(y, x)).max_abs());
        const FormPQ z = random_form(3, 1, 0, rng);
        worst = std::max(worst, (wedge(y, z) + wedge(z, y)).max_abs());
        worst = std::max(worst, wedge(y, y).max_abs());
    }
    o.ok = worst <= 1e-12;
    o.detail << "assoc/graded-commutativity max err " << sci(worst);
}

void check_sigma2_routes(Outcome& o) {
    std::mt19937_64 rng(13);
    double worst = 0.0;
    for (int n : {2, 3}) {
        const FormPQ wn2 = omega_power(n, n - 2);
        for (int trial = 0; trial < 1000; ++trial) {
            const HermMat A = random_hermitian(n, rng);
            const double tr = sigma2_matrix(A);
            const auto ev = eigenvalues(A);
            const double eig = sigma_k_eig(ev, 2);
            const FormPQ a = herm_to_form(A);
            const double wd = choose(n, 2) * top_ratio(wedge(wedge(a, a), wn2))[0].real();
            worst = std::max({worst, std::abs(tr - eig) / (1.0 + std::abs(tr)), std::abs(tr - wd) / (1.0 + std::abs(tr))});
        }
    }
    o.ok = worst <= 1e-10;
    o.detail << "trace/eigen/wedge max rel err " << sci(worst);
}

void check_cone(Outcome& o) {
    std::mt19937_64 rng(14);
    int disagreements = 0, used = 0;
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 1000; ++trial) {
            HermMat A = random_hermitian(n, rng);
            A = A + HermMat::identity(n) * (0.7 * static_cast<double>(trial % 3));
            const ConeMargin m = in_gamma2(A);
            if (std::min(std::abs(m.sigma1), std::abs(m.sigma2)) <= 1e-10) continue;
            ++used;
            const auto ev = eigenvalues(A);
            const bool brute = sigma_k_eig(ev, 1) > 0.0 && sigma_k_eig(ev, 2) > 0.0;
            if (brute != m.inside) ++disagreements;
        }
    }
    o.ok = disagreements == 0;
    o.detail << disagreements << " disagreements over " << used << " matrices";
}

void check_F_first(Outcome& o) {
    std::mt19937_64 rng(15);
    double worst = 0.0;
    const double h = 1e-5;
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 100; ++trial) {
            const HermMat A = random_hermitian(n, rng);
            const HermMat H = random_hermitian(n, rng);
            const double fd = (sigma2_matrix(A + H * h) - sigma2_matrix(A - H * h)) / (2.0 * h);
            const double an = contract_first(F_first(A), H);
            worst = std::max(worst, std::abs(fd - an) / std::max(1.0, std::abs(an)));
        }
    }
    o.ok = worst <= 1e-7;
    o.detail << "central-difference max rel err " << sci(worst);
}

void check_F_second(Outcome& o) {
    std::mt19937_64 rng(16);
    double worst = 0.0;
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 100; ++trial) {
            const HermMat A = random_hermitian(n, rng), H = random_hermitian(n, rng);
            const double lhs = sigma2_matrix(A + H);
            const double rhs = sigma2_matrix(A) + contract_first(F_first(A), H) + 0.5 * contract_second(n, H, H);
            worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
        }
    }
    o.ok = worst <= 1e-12;
    o.detail << "Taylor identity max rel err " << sci(worst);
}

void check_spectral(Outcome& o) {
    double worst = 0.0;
    for (int n : {2, 3}) {
        const GridSpec g{n, 8, 1.0};
        std::mt19937_64 rng(17 + static_cast<std::uint64_t>(n));
        const TrigPolynomial p = random_trig(n, g.N / 4, 5, 1.0, rng, 3);
        const ScalarField f = p.sample(g);
        const CovectorField d = d_holo(f);
        double scale = 0.0, err = 0.0;
        std::vector<double> x(static_cast<std::size_t>(g.axes()));
        for (std::size_t k = 0; k < g.node_count(); ++k) {
            for (int a = 0; a < g.axes(); ++a) x[static_cast<std::size_t>(a)] = g.coord(k, a);
            for (int j = 0; j < n; ++j) {
                const cplx exact = 0.5 * cplx(trig_partial(p, 2 * j, x, g.period), -trig_partial(p, 2 * j + 1, x, g.period));
                err = std::max(err, std::abs(d[j][k] - exact));
                scale = std::max(scale, std::abs(exact));
            }
        }
        worst = std::max(worst, err / std::max(scale, 1e-300));
    }
    o.ok = worst <= 1e-12;
    o.detail << "d_holo vs symbolic max rel err " << sci(worst);
}

void check_parseval(Outcome& o) {
    const GridSpec g{2, 16, 1.0};
    std::mt19937_64 rng(18);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.node_count());
    for (auto& x : v) x = nd(rng);
    const ScalarField f(g, std::move(v));
    const double phys = lp_norm(f * f, 1.0);
    const double four = std::pow(l2_norm_fourier(f), 2);
    const double rel = std::abs(phys - four) / phys;
    o.ok = rel <= 1e-12;
    o.detail << "L2 physical vs Fourier rel err " << sci(rel);
}

ProblemData check_problem(const GridSpec& g, std::mt19937_64& rng) {
    const double amp = resolution_safe_amplitude(g);
    HermitianField rho = HermitianField::constant(g, HermMat::identity(g.n) * 0.1) +
                         HermitianField::scalar_identity(smooth_random_phi(g, rng, 0.5 * amp));
    ScalarField mu = smooth_random_phi(g, rng, 0.3);
    mu = mu + (-mean(mu));
    return ProblemData{g, 0.05, 0.5, rho, mu};
}

void check_stokes(Outcome& o) {
    double worst = 0.0;
    for (int n : {2, 3}) {
        const GridSpec g{n, n == 2 ? 16 : 8, 1.0};
        std::mt19937_64 rng(19);
        const ProblemData d = check_problem(g, rng);
        for (double t : {0.37, 1.0}) {
            // Any φ, not only well-resolved ones.
            const State s{smooth_random_phi(g, rng, 0.8, 0.3), t};
            const ScalarField r = residual_form(s, d);
            const double l1 = lp_norm(map(r, [](double x) { return std::abs(x); }), 1.0);
            worst = std::max(worst, std::abs(integral(r)) / l1);
        }
    }
    o.ok = worst <= 1e-9;
    o.detail << "|mean| / L1 max " << sci(worst);
}

void check_equivalence(Outcome& o, double kappa_scale) {
    for (int n : {2, 3}) {
        const GridSpec g{n, n == 2 ? 16 : 8, 1.0};
        std::mt19937_64 rng(20);
        const ProblemData d = check_problem(g, rng);
        const EquivalenceFit fit = fit_equivalence(d, 1.0);
        const double frozen = kappa_scale * frozen_equivalence_constant(n, d.alpha);
        const double rel = std::abs(fit.kappa - frozen) / std::abs(frozen);
        o.detail << "n=" << n << " fit=" << std::setprecision(12) << fit.kappa << " frozen=" << frozen
                 << " spread=" << sci(fit.relative_spread) << " ";
        if (!(rel <= 1e-8) || !(fit.relative_spread <= 1e-8)) o.ok = false;
    }
}

void check_adjoint(Outcome& o) {
    double worst = 0.0, lstar1 = 0.0, mean_l = 0.0;
    for (int n : {2, 3}) {
        const GridSpec g{n, n == 2 ? 16 : 8, 1.0};
        std::mt19937_64 rng(21);
        const ProblemData d = check_problem(g, rng);
        const LinearOperator op(State{smooth_random_phi(g, rng, resolution_safe_amplitude(g), 0.5), 0.6}, d);
        std::normal_distribution<double> nd;
        for (int pair = 0; pair < 3; ++pair) {
            std::vector<double> a(g.node_count()), b(g.node_count());
            for (auto& x : a) x = nd(rng);
            for (auto& x : b) x = nd(rng);
            const ScalarField u(g, std::move(a)), v(g, std::move(b));
            const ScalarField lu = op.apply_L(u);
            const double l = inner(v, lu), r = inner(op.apply_Lstar(v), u);
            const double scale = std::sqrt(inner(v, v) * inner(lu, lu));
            worst = std::max(worst, std::abs(l - r) / scale);
            mean_l = std::max(mean_l, std::abs(integral(lu)) / std::sqrt(inner(lu, lu) * g.volume()));
        }
        lstar1 = std::max(lstar1, sup_abs(op.apply_Lstar(ScalarField::constant(g, 1.0))));
    }
    o.ok = worst <= 1e-9 && lstar1 <= 1e-11 && mean_l <= 1e-10;
    o.detail << "adjoint rel " << sci(worst) << ", |L*1| " << sci(lstar1) << ", |<1,Lu>| rel " << sci(mean_l);
}

void check_renormalize(Outcome& o) {
    const GridSpec g{2, 16, 1.0};
    std::mt19937_64 rng(22);
    const ScalarField phi = smooth_random_phi(g, rng, 2.0, -1.0);
    const double A = 0.3;
    const ScalarField r1 = renormalize(phi, A);
    const double mass = integral(exp(-1.0 * r1));
    const ScalarField r2 = renormalize(r1, A);
    const double rel = std::abs(mass - A) / A;
    const double idem = sup_abs(r2 - r1);
    o.ok = rel <= 1e-12 && idem <= 1e-14;
    o.detail << "norm rel err " << sci(rel) << ", idempotence " << sci(idem);
}

struct Entry {
    const char* name;
    std::function<void(Outcome&, const CheckOptions&)> fn;
};

const std::vector<Entry>& registry() {
    static const std::vector<Entry> r = {
        {"exterior.convention", [](Outcome& o, const CheckOptions&) { check_convention(o); }},
        {"exterior.mixed_identity", [](Outcome& o, const CheckOptions&) { check_mixed_identity(o); }},
        {"exterior.algebra", [](Outcome& o, const CheckOptions&) { check_algebra(o); }},
        {"hessian.sigma2_routes", [](Outcome& o, const CheckOptions&) { check_sigma2_routes(o); }},
        {"hessian.cone_oracle", [](Outcome& o, const CheckOptions&) { check_cone(o); }},
        {"hessian.F_first_fd", [](Outcome& o, const CheckOptions&) { check_F_first(o); }},
        {"hessian.F_second_taylor", [](Outcome& o, const CheckOptions&) { check_F_second(o); }},
        {"grid.spectral_exact", [](Outcome& o, const CheckOptions&) { check_spectral(o); }},
        {"grid.parseval", [](Outcome& o, const CheckOptions&) { check_parseval(o); }},
        {"assembly.stokes", [](Outcome& o, const CheckOptions&) { check_stokes(o); }},
        {"assembly.equivalence", [](Outcome& o, const CheckOptions& c) { check_equivalence(o, c.kappa_scale); }},
        {"solver.adjoint", [](Outcome& o, const CheckOptions&) { check_adjoint(o); }},
        {"solver.renormalize", [](Outcome& o, const CheckOptions&) { check_renormalize(o); }},
    };
    return r;
}

}  // namespace

std::vector<std::string> check_names() {
    std::vector<std::string> names;
    for (const auto& e : registry()) names.emplace_back(e.name);
    return names;
}

std::vector<CheckResult> run_checks(const CheckOptions& opt, std::ostream& out) {
    std::vector<CheckResult> results;
    for (const auto& e : registry()) {
        if (!opt.filter.empty() && std::string(e.name).find(opt.filter) == std::string::npos) continue;
        Outcome o;
        try {
            e.fn(o, opt);
        } catch (const std::exception& ex) {
            o.ok = false;
            o.detail << "exception: " << ex.what();
        }
        results.push_back({e.name, o.ok, o.detail.str()});
        out << (o.ok ? "PASS " : "FAIL ") << e.name << "  " << o.detail.str() << '\n';
    }
    return results;
}

}  // namespace fuyau
