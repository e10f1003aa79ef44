#pragma once

// Data-parallel inner loops shared by every module. Each kernel exists twice:
// `parallel::` is what the library calls (OpenMP, static schedule), and
// `serial::` is a plain-loop reference kept for tests and benchmarks.
//
// Pointwise kernels are bit-identical between the two. Reductions in
// `parallel::` sum over a fixed block decomposition that does not depend on
// the thread count, so results are reproducible run to run; they may differ
// from the serial reference in the last few ulps.

#include <complex>
#include <cstddef>
#include <span>

namespace fuyau::kernels {

using cplx = std::complex<double>;

/// Fixed number of reduction blocks used by parallel reductions.
inline constexpr std::size_t kReductionBlocks = 256;

namespace serial {

/// out[i] += scale * a[i] * b[i]
void mul_acc(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b, cplx scale);
/// out[i] += scale * a[i]
void axpy(std::span<cplx> out, std::span<const cplx> a, cplx scale);
/// out[i] = in[i] * symbol[i]
void symbol_mul(std::span<cplx> out, std::span<const cplx> in, std::span<const cplx> symbol);
/// out[i] = in[i] * w[i]
void weight(std::span<cplx> out, std::span<const cplx> in, std::span<const double> w);

double sum(std::span<const double> x);
double max(std::span<const double> x);
double min(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

/// σ₁ and σ₂ of the Hermitian matrix stored entry-major: entries[i*n+j][node].
void sigma12_nodes(int n, std::span<const cplx* const> entries, std::span<double> sigma1,
                   std::span<double> sigma2);

}  // namespace serial

namespace parallel {

void mul_acc(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b, cplx scale);
void axpy(std::span<cplx> out, std::span<const cplx> a, cplx scale);
void symbol_mul(std::span<cplx> out, std::span<const cplx> in, std::span<const cplx> symbol);
void weight(std::span<cplx> out, std::span<const cplx> in, std::span<const double> w);

double sum(std::span<const double> x);
double max(std::span<const double> x);
double min(std::span<const double> x);
double dot(std::span<const double> a, std::span<const double> b);

void sigma12_nodes(int n, std::span<const cplx* const> entries, std::span<double> sigma1,
                   std::span<double> sigma2);

}  // namespace parallel

}  // namespace fuyau::kernels
