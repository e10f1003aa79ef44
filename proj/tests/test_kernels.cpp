#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "fuyau/hessian.hpp"
#include "fuyau/kernels.hpp"

namespace k = fuyau::kernels;
using fuyau::cplx;

namespace {

std::vector<cplx> random_cplx(std::size_t m, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<cplx> v(m);
    for (auto& x : v) x = {nd(rng), nd(rng)};
    return v;
}

std::vector<double> random_real(std::size_t m, std::mt19937_64& rng) {
    std::normal_distribution<double> nd;
    std::vector<double> v(m);
    for (auto& x : v) x = nd(rng);
    return v;
}

class KernelSizes : public ::testing::TestWithParam<std::size_t> {};

TEST_P(KernelSizes, PointwiseKernelsMatchSerialBitwise) {
    std::mt19937_64 rng(GetParam());
    const std::size_t m = GetParam();
    const auto a = random_cplx(m, rng), b = random_cplx(m, rng), base = random_cplx(m, rng);
    const auto w = random_real(m, rng);
    const cplx s{0.3, -1.7};

    auto o1 = base, o2 = base;
    k::serial::mul_acc(o1, a, b, s);
    k::parallel::mul_acc(o2, a, b, s);
    EXPECT_EQ(o1, o2);

    o1 = base, o2 = base;
    k::serial::axpy(o1, a, s);
    k::parallel::axpy(o2, a, s);
    EXPECT_EQ(o1, o2);

    k::serial::symbol_mul(o1, a, b);
    k::parallel::symbol_mul(o2, a, b);
    EXPECT_EQ(o1, o2);

    k::serial::weight(o1, a, w);
    k::parallel::weight(o2, a, w);
    EXPECT_EQ(o1, o2);
}

TEST_P(KernelSizes, ReductionsAgreeToRounding) {
    std::mt19937_64 rng(GetParam() + 1);
    const std::size_t m = GetParam();
    const auto x = random_real(m, rng), y = random_real(m, rng);
    double abs_sum = 0.0;
    for (double v : x) abs_sum += std::abs(v);
    EXPECT_NEAR(k::serial::sum(x), k::parallel::sum(x), 1e-14 * abs_sum + 1e-300);
    EXPECT_NEAR(k::serial::dot(x, y), k::parallel::dot(x, y), 1e-13 * static_cast<double>(m));
    EXPECT_EQ(k::serial::max(x), k::parallel::max(x));
    EXPECT_EQ(k::serial::min(x), k::parallel::min(x));
}

TEST_P(KernelSizes, ParallelReductionIsDeterministic) {
    std::mt19937_64 rng(GetParam() + 2);
    const auto x = random_real(GetParam(), rng);
    const double first = k::parallel::sum(x);
    for (int rep = 0; rep < 5; ++rep) EXPECT_EQ(first, k::parallel::sum(x));
}

INSTANTIATE_TEST_SUITE_P(Sizes, KernelSizes, ::testing::Values(1, 7, 256, 1000, 65536));

TEST(Kernels, SigmaNodesSerialVsParallelAndMatrixFormula) {
    std::mt19937_64 rng(5);
    for (int n : {2, 3}) {
        const std::size_t m = 300;
        std::vector<std::vector<cplx>> storage(static_cast<std::size_t>(n * n), std::vector<cplx>(m));
        std::vector<fuyau::HermMat> mats;
        for (std::size_t node = 0; node < m; ++node) {
            const auto A = fuyau::random_hermitian(n, rng);
            mats.push_back(A);
            for (int e = 0; e < n * n; ++e) storage[static_cast<std::size_t>(e)][node] = A.a[static_cast<std::size_t>(e)];
        }
        std::vector<const cplx*> ptrs;
        for (auto& s : storage) ptrs.push_back(s.data());
        std::vector<double> s1a(m), s2a(m), s1b(m), s2b(m);
        k::serial::sigma12_nodes(n, ptrs, s1a, s2a);
        k::parallel::sigma12_nodes(n, ptrs, s1b, s2b);
        EXPECT_EQ(s1a, s1b);
        EXPECT_EQ(s2a, s2b);
        for (std::size_t node = 0; node < m; ++node) {
            EXPECT_NEAR(s1a[node], mats[node].trace().real(), 1e-13);
            EXPECT_NEAR(s2a[node], fuyau::sigma2_matrix(mats[node]), 1e-12 * (1 + std::abs(s2a[node])));
        }
    }
}

TEST(Kernels, EmptySpansAreHarmless) {
    std::vector<double> e;
    EXPECT_EQ(k::parallel::sum(e), 0.0);
    EXPECT_EQ(k::serial::sum(e), 0.0);
}

}  // namespace
