#include "fuyau/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fuyau/kernels.hpp"

namespace fuyau {

HermMat random_hermitian(int n, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> nd(0.0, scale);
    HermMat m(n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = nd(rng);
        for (int j = i + 1; j < n; ++j) {
            m(i, j) = cplx(nd(rng), nd(rng));
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

double sigma_k_eig(std::span<const double> lambda, int k) {
    const int n = static_cast<int>(lambda.size());
    if (k < 1 || k > n) throw std::invalid_argument("sigma_k_eig: k out of range");
    std::array<double, 8> e{};
    if (n >= static_cast<int>(e.size())) throw std::invalid_argument("sigma_k_eig: vector too long");
    e[0] = 1.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j >= 1; --j) e[static_cast<std::size_t>(j)] += lambda[static_cast<std::size_t>(i)] * e[static_cast<std::size_t>(j - 1)];
    return e[static_cast<std::size_t>(k)];
}

void require_hermitian(const HermMat& A, const char* where) {
    if (A.asymmetry() > 1e-12 * A.norm()) {
        throw std::invalid_argument(std::string(where) + ": matrix is not Hermitian");
    }
}

double sigma2_matrix(const HermMat& A) {
    require_hermitian(A, "sigma2_matrix");
    const double tr = A.trace().real();
    const double tr2 = A.matmul(A).trace().real();
    return 0.5 * (tr * tr - tr2);
}

namespace {

std::vector<double> jacobi_eigenvalues(const HermMat& A0) {
    HermMat A = A0;
    const int n = A.n;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(A(p, q));
        if (off <= 1e-300 || off <= 1e-32 * std::pow(A.norm(), 2)) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = A(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                // Complex Jacobi rotation: phase-align, then a real rotation.
                const cplx ph = apq / mag;
                const double app = A(p, p).real(), aqq = A(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
                const double c = std::cos(theta), s = std::sin(theta);
                // Columns: G = [[c, s·ph], [−s·conj(ph), c]] applied as A ← Gᴴ A G.
                HermMat G = HermMat::identity(n);
                G(p, p) = c;
                G(q, q) = c;
                G(p, q) = s * ph;
                G(q, p) = -s * std::conj(ph);
                HermMat Gh(n);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) Gh(i, j) = std::conj(G(j, i));
                A = Gh.matmul(A).matmul(G);
            }
        }
    }
    std::vector<double> ev(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ev[static_cast<std::size_t>(i)] = A(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

}  // namespace

std::vector<double> eigenvalues(const HermMat& A) {
    require_hermitian(A, "eigenvalues");
    const int n = A.n;
    if (n == 1) return {A(0, 0).real()};
    if (n == 2) {
        const double a = A(0, 0).real(), d = A(1, 1).real();
        const double m = 0.5 * (a + d);
        const double r = std::hypot(0.5 * (a - d), std::abs(A(0, 1)));
        return {m - r, m + r};
    }
    // n = 3: shifted trigonometric solution of the characteristic cubic.
    const double q = A.trace().real() / 3.0;
    HermMat B = A - HermMat::identity(3) * q;
    const double p2 = B.matmul(B).trace().real() / 6.0;
    const double scale = A.norm();
    if (p2 <= 1e-24 * scale * scale) return {q, q, q};
    const double p = std::sqrt(p2);
    const HermMat C = B * (1.0 / p);
    const cplx detC = C(0, 0) * (C(1, 1) * C(2, 2) - C(1, 2) * C(2, 1)) -
                      C(0, 1) * (C(1, 0) * C(2, 2) - C(1, 2) * C(2, 0)) +
                      C(0, 2) * (C(1, 0) * C(2, 1) - C(1, 1) * C(2, 0));
    const double r = 0.5 * detC.real();
    // Near r = ±1 two roots coalesce and acos loses half the digits; use Jacobi there.
    if (std::abs(r) > 1.0 - 1e-6) return jacobi_eigenvalues(A);
    const double phi = std::acos(r) / 3.0;
    const double e1 = q + 2.0 * p * std::cos(phi);
    const double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
    const double e2 = 3.0 * q - e1 - e3;
    std::vector<double> ev{e1, e2, e3};
    std::sort(ev.begin(), ev.end());
    return ev;
}

ConeMargin in_gamma2(const HermMat& A) {
    ConeMargin m;
    m.sigma1 = A.trace().real();
    m.sigma2 = sigma2_matrix(A);
    m.inside = m.sigma1 > 0.0 && m.sigma2 > 0.0;
    return m;
}

HermMat F_first(const HermMat& A) {
    require_hermitian(A, "F_first");
    const int n = A.n;
    HermMat F(n);
    for (int i = 0; i < n; ++i) {
        // Diagonal as the sum of the other diagonal entries, not tr A − A_ii.
        double others = 0.0;
        for (int k = 0; k < n; ++k)
            if (k != i) others += A(k, k).real();
        F(i, i) = others;
        for (int j = 0; j < n; ++j)
            if (j != i) F(i, j) = -A(j, i);
    }
    return F;
}

double F_second(int i, int j, int k, int l) {
    if (i == j && k == l && i != k) return 1.0;
    if (i == l && k == j && i != k) return -1.0;
    return 0.0;
}

double contract_first(const HermMat& F, const HermMat& H) {
    cplx s = 0.0;
    for (int i = 0; i < F.n; ++i)
        for (int j = 0; j < F.n; ++j) s += F(i, j) * H(i, j);
    return s.real();
}

double contract_second(int n, const HermMat& H, const HermMat& K) {
    cplx s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    const double f = F_second(i, j, k, l);
                    if (f != 0.0) s += f * H(i, j) * K(k, l);
                }
    return s.real();
}

SigmaFields sigma12(const HermitianField& A) {
    const std::size_t m = A.grid().node_count();
    std::vector<double> s1(m), s2(m);
    const auto ptrs = A.entry_pointers();
    kernels::parallel::sigma12_nodes(A.dim(), ptrs, s1, s2);
    return {ScalarField(A.grid(), std::move(s1)), ScalarField(A.grid(), std::move(s2))};
}

ConeMargin field_cone_margin(const HermitianField& A) {
    const auto s = sigma12(A);
    ConeMargin m;
    m.sigma1 = kernels::parallel::min(s.sigma1.values());
    m.sigma2 = kernels::parallel::min(s.sigma2.values());
    m.inside = m.sigma1 > 0.0 && m.sigma2 > 0.0;
    return m;
}

}  // namespace fuyau
