#include <gtest/gtest.h>

#include <random>

#include "fuyau/assembly.hpp"
#include "fuyau/errors.hpp"
#include "fuyau/hessian.hpp"
#include "fuyau/spectral.hpp"
#include "support.hpp"

using namespace fuyau;

namespace {

struct Dim {
    int n;
    int N;
};

class AssemblyDim : public ::testing::TestWithParam<Dim> {};

TEST_P(AssemblyDim, FormResidualIntegratesToZero) {
    const auto [n, N] = GetParam();
    const GridSpec g{n, N, 1.0};
    const ProblemData d = support::generic_problem(g);
    std::mt19937_64 rng(3);
    for (double t : {0.0, 0.37, 1.0}) {
        const State s{smooth_random_phi(g, rng, 0.6, 0.2), t};
        const ScalarField r = residual_form(s, d);
        const double l1 = lp_norm(map(r, [](double x) { return std::abs(x); }), 1.0);
        EXPECT_LE(std::abs(integral(r)), 1e-10 * l1) << "t=" << t;
    }
}

TEST_P(AssemblyDim, SigmaResidualIsFixedMultipleOfFormResidual) {
    const auto [n, N] = GetParam();
    const GridSpec g{n, N, 1.0};
    for (double alpha : {0.05, -0.05}) {
        const ProblemData d = support::generic_problem(g, alpha);
        const double kappa = frozen_equivalence_constant(n, alpha);
        std::mt19937_64 rng(4);
        for (double t : {0.0, 0.37, 1.0}) {
            const State s{smooth_random_phi(g, rng, resolution_safe_amplitude(g), 0.3), t};
            const ScalarField a = residual_sigma(s, d), b = residual_form(s, d);
            EXPECT_LE(sup_abs(a - kappa * b), 1e-9 * sup_abs(a)) << "alpha=" << alpha << " t=" << t;
        }
    }
}

TEST_P(AssemblyDim, FittedConstantMatchesClosedForm) {
    const auto [n, N] = GetParam();
    const ProblemData d = support::generic_problem(GridSpec{n, N, 1.0});
    const EquivalenceFit fit = fit_equivalence(d, 0.37, n == 2 ? 10 : 4);
    EXPECT_NEAR(fit.kappa, frozen_equivalence_constant(n, d.alpha), 1e-9 * std::abs(fit.kappa));
    EXPECT_LE(fit.relative_spread, 1e-8);
}

TEST_P(AssemblyDim, ConstantStartSolvesTimeZero) {
    const auto [n, N] = GetParam();
    const GridSpec g{n, N, 1.0};
    const ProblemData d = support::generic_problem(g, 0.05, 0.3);
    const State s{ScalarField::constant(g, -std::log(d.A)), 0.0};
    EXPECT_LE(sup_abs(residual_form(s, d)), 1e-13);
    EXPECT_LE(sup_abs(residual_sigma(s, d)), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Dims, AssemblyDim, ::testing::Values(Dim{2, 16}, Dim{3, 8}));

TEST(Assembly, OmegaTildeAtConstantPhi) {
    const GridSpec g{2, 8, 1.0};
    const ProblemData d = support::generic_problem(g, 0.05);
    const State s{ScalarField::constant(g, 0.4), 0.5};
    const HermitianField w = omega_tilde(s, d);
    for (std::size_t k = 0; k < g.node_count(); k += 101) {
        const HermMat expect = HermMat::identity(2) * std::exp(0.4) + d.rho.matrix_at(k) * (0.5 * 0.05 * std::exp(-0.4));
        EXPECT_LE((w.matrix_at(k) - expect).norm(), 1e-14);
    }
}

TEST(Assembly, RightHandSideAtConstantPhiWithoutData) {
    const GridSpec g{3, 4, 1.0};
    const ProblemData d{g, 0.05, 1.0, HermitianField::zero(g), ScalarField::constant(g, 0.0)};
    const State s{ScalarField::constant(g, 0.7), 1.0};
    EXPECT_NEAR(rhs_F(s, d)[5], 3.0 * std::exp(1.4), 1e-12);
    EXPECT_NEAR(sup_abs(f_term(s, d)), 0.0, 1e-13);
}

TEST(Assembly, RescaledResidual) {
    const GridSpec g{2, 8, 1.0};
    const ProblemData d = support::generic_problem(g);
    std::mt19937_64 rng(5);
    const State s{smooth_random_phi(g, rng, 2e-3, 0.5), 0.6};
    const ScalarField expect = exp(-2.0 * s.phi) * residual_sigma(s, d);
    EXPECT_LE(sup_abs(residual_sigma_rescaled(s, d) - expect), 1e-12 * (1 + sup_abs(expect)));
}

TEST(Assembly, ManufacturedMuIsMeanZeroAndExact) {
    for (double alpha : {0.05, -0.05}) {
        const auto m = support::manufactured(2, 16, alpha);
        EXPECT_LE(std::abs(mean(m.data.mu)), 1e-9);
        EXPECT_NO_THROW(m.data.validate());
        EXPECT_LE(sup_abs(residual_form(State{m.phi_star, 1.0}, m.data)), 1e-12);
    }
}

TEST(Assembly, ValidationRejectsBadData) {
    const GridSpec g{2, 4, 1.0};
    ProblemData d = support::generic_problem(g);
    EXPECT_NO_THROW(d.validate());
    ProblemData bad = d;
    bad.alpha = 0.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = d;
    bad.A = -1.0;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = d;
    bad.mu = d.mu + 0.5;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    bad = d;
    bad.mu = ScalarField::constant(GridSpec{2, 8, 1.0}, 0.0);
    EXPECT_THROW(bad.validate(), GridMismatch);
}

TEST(Assembly, SmoothRandomPhiIsDeterministicAndBounded) {
    const GridSpec g{2, 8, 1.0};
    std::mt19937_64 a(9), b(9);
    const ScalarField x = smooth_random_phi(g, a, 0.2, 1.0), y = smooth_random_phi(g, b, 0.2, 1.0);
    EXPECT_EQ(sup_abs(x - y), 0.0);
    EXPECT_LE(sup_abs(x + (-1.0)), 0.2 + 1e-15);
}

}  // namespace
