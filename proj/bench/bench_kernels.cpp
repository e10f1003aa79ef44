// Serial reference vs OpenMP kernels, plus one application of the linearized operator.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "fuyau/kernels.hpp"
#include "fuyau/linear_operator.hpp"

namespace k = fuyau::kernels;
using fuyau::cplx;

namespace {

std::vector<cplx> random_cplx(std::size_t m) {
    std::mt19937_64 rng(m);
    std::normal_distribution<double> nd;
    std::vector<cplx> v(m);
    for (auto& x : v) x = {nd(rng), nd(rng)};
    return v;
}

std::vector<double> random_real(std::size_t m) {
    std::mt19937_64 rng(m + 1);
    std::normal_distribution<double> nd;
    std::vector<double> v(m);
    for (auto& x : v) x = nd(rng);
    return v;
}

template <bool Parallel>
void BM_MulAcc(benchmark::State& st) {
    const auto m = static_cast<std::size_t>(st.range(0));
    auto out = random_cplx(m);
    const auto a = random_cplx(m), b = random_cplx(m);
    for (auto _ : st) {
        if constexpr (Parallel) k::parallel::mul_acc(out, a, b, 0.5);
        else k::serial::mul_acc(out, a, b, 0.5);
        benchmark::DoNotOptimize(out.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(m));
}

template <bool Parallel>
void BM_Sum(benchmark::State& st) {
    const auto x = random_real(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Parallel ? k::parallel::sum(x) : k::serial::sum(x));
    st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <bool Parallel>
void BM_Sigma12(benchmark::State& st) {
    const int n = static_cast<int>(st.range(1));
    const auto m = static_cast<std::size_t>(st.range(0));
    std::vector<std::vector<cplx>> entries(static_cast<std::size_t>(n * n), random_cplx(m));
    std::vector<const cplx*> ptrs;
    for (auto& e : entries) ptrs.push_back(e.data());
    std::vector<double> s1(m), s2(m);
    for (auto _ : st) {
        if constexpr (Parallel) k::parallel::sigma12_nodes(n, ptrs, s1, s2);
        else k::serial::sigma12_nodes(n, ptrs, s1, s2);
        benchmark::DoNotOptimize(s2.data());
    }
    st.SetItemsProcessed(st.iterations() * static_cast<long>(m));
}

void BM_ApplyL(benchmark::State& st) {
    const fuyau::GridSpec g{static_cast<int>(st.range(0)), static_cast<int>(st.range(1)), 1.0};
    std::mt19937_64 rng(3);
    const auto rho = fuyau::HermitianField::constant(g, fuyau::HermMat::identity(g.n) * 0.1);
    const fuyau::ProblemData d{g, 0.05, 1.0, rho, fuyau::ScalarField::constant(g, 0.0)};
    const fuyau::LinearOperator op(fuyau::State{fuyau::smooth_random_phi(g, rng, 0.01, 0.5), 0.5}, d);
    const auto u = fuyau::smooth_random_phi(g, rng, 1.0);
    for (auto _ : st) benchmark::DoNotOptimize(op.apply_L(u));
}

}  // namespace

BENCHMARK(BM_MulAcc<false>)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_MulAcc<true>)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_Sum<false>)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_Sum<true>)->Arg(1 << 16)->Arg(1 << 18);
BENCHMARK(BM_Sigma12<false>)->Args({1 << 16, 2})->Args({1 << 18, 3});
BENCHMARK(BM_Sigma12<true>)->Args({1 << 16, 2})->Args({1 << 18, 3});
BENCHMARK(BM_ApplyL)->Args({2, 16})->Args({3, 8})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
