#include "fuyau/linear_operator.hpp"

#include <cmath>
#include <random>
#include <string>

#include "fuyau/errors.hpp"
#include "fuyau/hessian.hpp"
#include "fuyau/kernels.hpp"
#include "fuyau/spectral.hpp"

namespace fuyau {

namespace kp = kernels::parallel;

namespace {

double pair_count(int n) { return static_cast<double>(n * (n - 1)); }

ScalarField real_part(const GridSpec& g, const std::vector<cplx>& v) {
    std::vector<double> r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k].real();
    return ScalarField(g, std::move(r));
}

double l2(const std::vector<double>& v) { return std::sqrt(kp::dot(v, v)); }

}  // namespace

ScalarField ddbar_top_ratio(const HermitianField& B) {
    // Per Fourier mode √−1∂∂̄ acts as wedging with √−1 S, S_ab = D_a·Dbar_b, and
    // R(√−1 S ∧ √−1 B) = (tr S·tr B − Σ S_ab B_ba)/(n(n−1)).
    const GridSpec& g = B.grid();
    const int n = g.n;
    const auto& sp = Spectral::for_grid(g);
    const std::size_t m = g.node_count();
    std::vector<cplx> acc(m, 0.0);
    std::vector<cplx> tmp(m);
    const auto tr_hat = sp.forward(ComplexField::from_real(B.trace()).values());
    for (int a = 0; a < n; ++a) {
        kp::symbol_mul(tmp, tr_hat, sp.holo_symbol(a));
        kp::mul_acc(acc, tmp, sp.antiholo_symbol(a), 1.0);
    }
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            const auto hat = sp.forward(B(b, a).values());
            kp::symbol_mul(tmp, hat, sp.holo_symbol(a));
            kp::mul_acc(acc, tmp, sp.antiholo_symbol(b), -1.0);
        }
    }
    auto out = sp.inverse(acc);
    const double s = 1.0 / pair_count(n);
    for (auto& v : out) v *= s;
    return real_part(g, out);
}

ScalarField mixed_top_ratio(const HermitianField& A, const HermitianField& B) {
    require_same_grid(A.grid(), B.grid(), "mixed_top_ratio");
    const GridSpec& g = A.grid();
    const int n = g.n;
    const std::size_t m = g.node_count();
    const auto pa = A.entry_pointers();
    const auto pb = B.entry_pointers();
    std::vector<double> out(m);
    const double s = 1.0 / pair_count(n);
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < m; ++k) {
        double tra = 0.0, trb = 0.0, cross = 0.0;
        for (int i = 0; i < n; ++i) {
            tra += pa[static_cast<std::size_t>(i * n + i)][k].real();
            trb += pb[static_cast<std::size_t>(i * n + i)][k].real();
            for (int j = 0; j < n; ++j)
                cross += (pa[static_cast<std::size_t>(j * n + i)][k] * pb[static_cast<std::size_t>(i * n + j)][k]).real();
        }
        out[k] = s * (tra * trb - cross);
    }
    return ScalarField(g, std::move(out));
}

LinearOperator::LinearOperator(State reference, ProblemData data) : ref_(std::move(reference)), data_(std::move(data)) {
    const GridSpec& g = data_.grid;
    require_same_grid(ref_.phi.grid(), g, "LinearOperator");
    const int n = g.n;
    weight_ = exp(-1.0 * ref_.phi);
    G_ = HermitianField::scalar_identity(exp(ref_.phi));
    if (ref_.t != 0.0) G_ = G_ + data_.rho.scaled(ref_.t * data_.alpha * weight_);
    P_ = dd_bar(ref_.phi);
    omega_tilde_ = G_ + P_.scaled(2.0 * n * data_.alpha);

    // Freeze ω̃ at its node mean.
    HermMat mean_w(n);
    const double inv_m = 1.0 / static_cast<double>(g.node_count());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (const auto& v : omega_tilde_(i, j).values()) s += v;
            mean_w(i, j) = s * inv_m;
        }
    if (!in_gamma2(mean_w).inside) {
        precond_fallback_ = true;
        mean_w = HermMat::identity(n) * std::exp(mean(ref_.phi));
    }
    const HermMat F = F_first(mean_w);
    const auto& sp = Spectral::for_grid(g);
    const auto mask = sp.resolved_mask();
    precond_symbol_inv_.assign(g.node_count(), 0.0);
    for (std::size_t k = 1; k < g.node_count(); ++k) {
        if (mask[k] == 0.0) continue;
        cplx sym = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) sym += F(i, j) * sp.holo_symbol(i)[k] * sp.antiholo_symbol(j)[k];
        const double s = sym.real() / pair_count(n);
        if (std::abs(s) > 0.0) precond_symbol_inv_[k] = 1.0 / s;
    }
}

ScalarField LinearOperator::apply_L(const ScalarField& u) const {
    require_same_grid(u.grid(), data_.grid, "apply_L");
    const int n = data_.grid.n;
    const ScalarField first = ddbar_top_ratio(G_.scaled(u));
    const ScalarField second = mixed_top_ratio(P_, dd_bar(u));
    return first + (2.0 * n * data_.alpha) * second;
}

ScalarField LinearOperator::apply_Lstar(const ScalarField& v) const {
    require_same_grid(v.grid(), data_.grid, "apply_Lstar");
    const int n = data_.grid.n;
    const ScalarField first = mixed_top_ratio(G_, dd_bar(v));
    const ScalarField second = ddbar_top_ratio(P_.scaled(v));
    return first + (2.0 * n * data_.alpha) * second;
}

ScalarField LinearOperator::apply_Lstar_pointwise(const ScalarField& v) const {
    require_same_grid(v.grid(), data_.grid, "apply_Lstar_pointwise");
    return mixed_top_ratio(omega_tilde_, dd_bar(v));
}

ScalarField LinearOperator::apply_preconditioner(const ScalarField& r) const {
    const auto& sp = Spectral::for_grid(data_.grid);
    auto hat = sp.forward(r);
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= precond_symbol_inv_[k];
    return real_part(data_.grid, sp.inverse(hat));
}

GmresResult gmres_resolved(const LinearOperator& op, const ScalarField& b_in, const GmresOptions& opt) {
    const GridSpec& g = op.data().grid;
    const std::size_t m = g.node_count();
    const ScalarField b = project_resolved_mean_zero(b_in);
    const std::vector<double> bv(b.values().begin(), b.values().end());
    const double bnorm = l2(bv);
    GmresResult res;
    res.x = ScalarField::constant(g, 0.0);
    if (bnorm == 0.0) {
        res.converged = true;
        return res;
    }
    auto apply_A = [&](const std::vector<double>& y) {
        const ScalarField x = op.apply_preconditioner(ScalarField(g, y));
        const ScalarField r = project_resolved_mean_zero(op.apply_L(x));
        return std::vector<double>(r.values().begin(), r.values().end());
    };

    std::vector<double> y_total(m, 0.0);  // preconditioned unknown
    std::vector<double> r = bv;
    double rnorm = bnorm;
    const int k_max = opt.restart;
    int total = 0;
    while (total < opt.max_iterations) {
        std::vector<std::vector<double>> V;
        V.reserve(static_cast<std::size_t>(k_max + 1));
        std::vector<std::vector<double>> H(static_cast<std::size_t>(k_max + 1), std::vector<double>(static_cast<std::size_t>(k_max), 0.0));
        std::vector<double> cs(static_cast<std::size_t>(k_max)), sn(static_cast<std::size_t>(k_max));
        std::vector<double> e(static_cast<std::size_t>(k_max + 1), 0.0);
        e[0] = rnorm;
        V.push_back(r);
        for (auto& v : V[0]) v /= rnorm;
        int k = 0;
        for (; k < k_max && total < opt.max_iterations; ++k, ++total) {
            std::vector<double> w = apply_A(V[static_cast<std::size_t>(k)]);
            // Modified Gram-Schmidt with one reorthogonalization pass.
            for (int pass = 0; pass < 2; ++pass) {
                for (int i = 0; i <= k; ++i) {
                    const double h = kp::dot(w, V[static_cast<std::size_t>(i)]);
                    H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] += h;
                    const auto& vi = V[static_cast<std::size_t>(i)];
                    for (std::size_t j = 0; j < m; ++j) w[j] -= h * vi[j];
                }
            }
            const double hn = l2(w);
            H[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(k)] = hn;
            for (int i = 0; i < k; ++i) {
                const double a = H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                const double c = H[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(k)];
                H[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = cs[static_cast<std::size_t>(i)] * a + sn[static_cast<std::size_t>(i)] * c;
                H[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(k)] = -sn[static_cast<std::size_t>(i)] * a + cs[static_cast<std::size_t>(i)] * c;
            }
            const double a = H[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
            const double rr = std::hypot(a, hn);
            cs[static_cast<std::size_t>(k)] = rr == 0.0 ? 1.0 : a / rr;
            sn[static_cast<std::size_t>(k)] = rr == 0.0 ? 0.0 : hn / rr;
            H[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = rr;
            H[static_cast<std::size_t>(k + 1)][static_cast<std::size_t>(k)] = 0.0;
            e[static_cast<std::size_t>(k + 1)] = -sn[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(k)];
            e[static_cast<std::size_t>(k)] = cs[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(k)];
            if (hn > 0.0) {
                for (auto& v : w) v /= hn;
            }
            V.push_back(std::move(w));
            if (std::abs(e[static_cast<std::size_t>(k + 1)]) <= 0.1 * opt.tol * bnorm || hn == 0.0) {
                ++k;
                ++total;
                break;
            }
        }
        // Back substitution for the k×k triangular system.
        std::vector<double> z(static_cast<std::size_t>(k), 0.0);
        for (int i = k - 1; i >= 0; --i) {
            double s = e[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j) s -= H[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(j)];
            z[static_cast<std::size_t>(i)] = s / H[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
        }
        for (int i = 0; i < k; ++i) {
            const auto& vi = V[static_cast<std::size_t>(i)];
            for (std::size_t j = 0; j < m; ++j) y_total[j] += z[static_cast<std::size_t>(i)] * vi[j];
        }
        // True residual.
        const std::vector<double> ay = apply_A(y_total);
        for (std::size_t j = 0; j < m; ++j) r[j] = bv[j] - ay[j];
        rnorm = l2(r);
        if (rnorm <= opt.tol * bnorm) break;
    }
    res.x = op.apply_preconditioner(ScalarField(g, y_total));
    res.iterations = total;
    res.relative_residual = rnorm / bnorm;
    res.converged = rnorm <= opt.tol * bnorm;
    return res;
}

KernelInfo compute_kernel(const LinearOperator& op, const GmresOptions& opt) {
    const GridSpec& g = op.data().grid;
    const ScalarField one = ScalarField::constant(g, 1.0);
    const ScalarField l1 = op.apply_L(one);
    const GmresResult w = gmres_resolved(op, -1.0 * l1, opt);
    if (!w.converged) {
        throw LinearSolveError("compute_kernel: GMRES stalled at relative residual " + std::to_string(w.relative_residual));
    }
    KernelInfo k;
    k.u0 = one + w.x;
    k.weighted_mass = integral(k.u0 * op.weight());
    if (!(k.weighted_mass > 0.0)) {
        throw KernelDegeneracyError("compute_kernel: kernel vector has non-positive weighted mass");
    }
    return k;
}

void probe_kernel_dimension(const LinearOperator& op, const GmresOptions& opt, std::uint64_t seed) {
    const GridSpec& g = op.data().grid;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.node_count());
    for (auto& x : v) x = nd(rng);
    const ScalarField z = project_resolved_mean_zero(ScalarField(g, std::move(v)));
    const GmresResult w = gmres_resolved(op, op.apply_L(z), opt);
    const double err = lp_norm(map(w.x - z, [](double x) { return x * x; }), 1.0);
    const double ref = lp_norm(map(z, [](double x) { return x * x; }), 1.0);
    if (!w.converged || std::sqrt(err) > 1e-6 * std::sqrt(ref)) {
        throw KernelDegeneracyError("probe_kernel_dimension: a second near-null direction was found (recovery error " +
                                    std::to_string(std::sqrt(err / ref)) + ")");
    }
}

LinearSolveResult solve_linear(const LinearOperator& op, const ScalarField& rhs, const LinearSolveOptions& opt) {
    const GridSpec& g = op.data().grid;
    require_same_grid(rhs.grid(), g, "solve_linear");
    if (opt.probe_kernel) probe_kernel_dimension(op, opt.gmres, opt.probe_seed);
    LinearSolveResult out;
    out.rhs_defect = std::abs(integral(rhs));
    const GmresResult sol = gmres_resolved(op, rhs, opt.gmres);
    if (!sol.converged) {
        throw LinearSolveError("solve_linear: GMRES stalled at relative residual " + std::to_string(sol.relative_residual));
    }
    out.kernel = compute_kernel(op, opt.gmres);
    const double c0 = -integral(sol.x * op.weight()) / out.kernel.weighted_mass;
    out.u = sol.x + c0 * out.kernel.u0;
    out.iterations = sol.iterations;
    const ScalarField b = project_resolved_mean_zero(rhs);
    const ScalarField r = project_resolved_mean_zero(op.apply_L(out.u)) - b;
    const double bn = std::sqrt(inner(b, b));
    out.relative_residual = bn > 0.0 ? std::sqrt(inner(r, r)) / bn : 0.0;
    return out;
}

}  // namespace fuyau
