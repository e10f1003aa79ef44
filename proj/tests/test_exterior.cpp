#include <gtest/gtest.h>

#include <random>

#include "fuyau/errors.hpp"
#include "fuyau/exterior.hpp"
#include "fuyau/hessian.hpp"
#include "fuyau/spectral.hpp"
#include "fuyau/trig.hpp"
#include "oracles/wedge_oracle.hpp"

using namespace fuyau;

namespace {

double choose(int n, int k) { return n == 3 && k == 2 ? 3.0 : (n == 2 && k == 2 ? 1.0 : 0.0); }

TEST(Exterior, IndexSetsAscending) {
    EXPECT_EQ(index_sets(3, 2), (std::vector<unsigned>{0b011, 0b101, 0b110}));
    EXPECT_EQ(index_sets(2, 0), (std::vector<unsigned>{0}));
    EXPECT_TRUE(index_sets(2, 3).empty());
}

TEST(Exterior, OverfullBidegreeIsZeroForm) {
    const FormPQ f(2, 3, 0);
    EXPECT_EQ(f.size(), 0u);
    std::mt19937_64 rng(1);
    const FormPQ a = random_form(2, 2, 1, rng), b = random_form(2, 1, 0, rng);
    EXPECT_EQ(wedge(a, b).size(), 0u);
}

class WedgeOracle : public ::testing::TestWithParam<int> {};

TEST_P(WedgeOracle, MatchesBruteForceWords) {
    const int n = GetParam();
    std::mt19937_64 rng(10 + static_cast<std::uint64_t>(n));
    double worst = 0.0;
    for (int p1 = 0; p1 <= n; ++p1)
        for (int q1 = 0; q1 <= n; ++q1)
            for (int p2 = 0; p2 + p1 <= n; ++p2)
                for (int q2 = 0; q2 + q1 <= n; ++q2) {
                    const FormPQ a = random_form(n, p1, q1, rng), b = random_form(n, p2, q2, rng);
                    const auto lib = oracle::to_words(wedge(a, b));
                    const auto ref = oracle::wedge(oracle::to_words(a), oracle::to_words(b));
                    worst = std::max(worst, oracle::max_diff(lib, ref));
                }
    EXPECT_LE(worst, 1e-13);
}

TEST_P(WedgeOracle, OmegaPowersAndTopRatio) {
    const int n = GetParam();
    for (int k = 0; k <= n; ++k) {
        oracle::WordForm wk = {{oracle::Word{}, 1.0}};
        for (int i = 0; i < k; ++i) wk = oracle::wedge(wk, oracle::kahler(n));
        EXPECT_LE(oracle::max_diff(oracle::to_words(omega_power(n, k)), wk), 1e-14) << "k=" << k;
    }
    EXPECT_NEAR(top_ratio(omega_power(n, n))[0].real(), 1.0, 1e-15);
    EXPECT_NEAR(sigma2_convention_constant(n), 1.0, 1e-14);
    std::mt19937_64 rng(3);
    const FormPQ a = random_form(n, n, n, rng);
    const auto ref = oracle::top_ratio(oracle::to_words(a), n);
    EXPECT_NEAR(std::abs(top_ratio(a)[0] - ref), 0.0, 1e-14);
}

TEST_P(WedgeOracle, AssociativeAndGradedCommutative) {
    const int n = GetParam();
    std::mt19937_64 rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        const FormPQ a = random_form(n, 1, 0, rng), b = random_form(n, 0, 1, rng), c = random_form(n, 1, 1, rng);
        EXPECT_LE((wedge(wedge(a, b), c) - wedge(a, wedge(b, c))).max_abs(), 1e-12);
        EXPECT_LE((wedge(a, b) + wedge(b, a)).max_abs(), 1e-12);
        EXPECT_LE((wedge(a, c) - wedge(c, a)).max_abs(), 1e-12);
        EXPECT_LE(wedge(a, a).max_abs(), 1e-15);
    }
}

TEST_P(WedgeOracle, MixedDiscriminantIdentity) {
    const int n = GetParam();
    std::mt19937_64 rng(30);
    const FormPQ wn2 = omega_power(n, n - 2);
    for (int trial = 0; trial < 50; ++trial) {
        const HermMat A = random_hermitian(n, rng), B = random_hermitian(n, rng);
        const double lhs = choose(n, 2) * top_ratio(wedge(wedge(herm_to_form(A), herm_to_form(B)), wn2))[0].real();
        const double rhs = 0.5 * (A.trace().real() * B.trace().real() - A.matmul(B).trace().real());
        EXPECT_NEAR(lhs, rhs, 1e-12 * (1.0 + std::abs(rhs)));
        // σ₁ through a single wedge with ω^{n−1}
        EXPECT_NEAR(n * top_ratio(wedge(herm_to_form(A), omega_power(n, n - 1)))[0].real(), A.trace().real(), 1e-12);
    }
}

TEST_P(WedgeOracle, RealFormsAndHermitianRoundTrip) {
    const int n = GetParam();
    std::mt19937_64 rng(40);
    const HermMat A = random_hermitian(n, rng);
    const FormPQ a = herm_to_form(A);
    EXPECT_TRUE(a.is_real());
    EXPECT_TRUE(wedge(a, a).is_real());
    EXPECT_NEAR(std::abs(a.coeff(1u, 1u)[0] - cplx(0, 1) * A(0, 0)), 0.0, 1e-15);
    EXPECT_LE((form_to_herm_at(a, 0) - A).norm(), 1e-15);
    EXPECT_FALSE((a * cplx(0, 1)).is_real());
}

INSTANTIATE_TEST_SUITE_P(Dims, WedgeOracle, ::testing::Values(2, 3));

TEST(Exterior, GridFormsAndDerivatives) {
    const GridSpec g{2, 8, 1.0};
    std::mt19937_64 rng(5);
    const ScalarField f = random_trig(2, 2, 4, 1.0, rng).sample(g);
    // ∂̄∂f as a (1,1)-form equals −(∂∂̄f) with the literal convention: compare to dd_bar.
    const FormPQ df = holo_covector_form(d_holo(f));
    const FormPQ ddf = d_form_antiholo(df);
    const HermitianField h = dd_bar(f);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const unsigned J = 1u << i, K = 1u << j;
            const auto c = ddf.coeff(J, K);
            for (std::size_t k = 0; k < g.node_count(); k += 37) EXPECT_NEAR(std::abs(c[k] + h(i, j)[k]), 0.0, 1e-11);
        }
    // ∂∂f = 0 and ∂̄∂̄f = 0
    EXPECT_LE(d_form_holo(df).max_abs(), 1e-11);
    EXPECT_LE(d_form_antiholo(antiholo_covector_form(d_antiholo(f))).max_abs(), 1e-11);
}

TEST(Exterior, TopRatioRealGuardsImaginaryResidue) {
    const GridSpec g{2, 4, 1.0};
    const FormPQ w = omega_power(g, 2);
    EXPECT_NEAR(top_ratio_real(w)[0], 1.0, 1e-15);
    EXPECT_THROW(top_ratio_real(w * cplx(0.0, 1.0)), ConventionError);
    EXPECT_THROW(top_ratio(omega_power(g, 1)), std::invalid_argument);
}

TEST(Exterior, IncompatibleFormsRejected) {
    const FormPQ a(2, 1, 0, 4), b(2, 1, 0, 5), c(3, 1, 0, 4);
    EXPECT_FALSE(a.compatible(b));
    EXPECT_ANY_THROW(a + b);
    EXPECT_ANY_THROW(wedge(a, c));
}

}  // namespace
