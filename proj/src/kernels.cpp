#include "fuyau/kernels.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <limits>

namespace fuyau::kernels {

namespace {

inline void sigma12_at(int n, std::span<const cplx* const> e, std::size_t k, double& s1, double& s2) {
    double tr = 0.0;
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        tr += e[i * n + i][k].real();
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            acc += e[i * n + i][k].real() * e[j * n + j][k].real() - std::norm(e[i * n + j][k]);
        }
    }
    s1 = tr;
    s2 = acc;
}

struct Block {
    std::size_t begin;
    std::size_t end;
};

inline Block block_of(std::size_t b, std::size_t size) {
    const std::size_t per = (size + kReductionBlocks - 1) / kReductionBlocks;
    const std::size_t begin = std::min(size, b * per);
    return {begin, std::min(size, begin + per)};
}

}  // namespace

namespace serial {

void mul_acc(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b, cplx scale) {
    assert(out.size() == a.size() && a.size() == b.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += scale * (a[i] * b[i]);
    }
}

void axpy(std::span<cplx> out, std::span<const cplx> a, cplx scale) {
    assert(out.size() == a.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] += scale * a[i];
    }
}

void symbol_mul(std::span<cplx> out, std::span<const cplx> in, std::span<const cplx> symbol) {
    assert(out.size() == in.size() && in.size() == symbol.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = in[i] * symbol[i];
    }
}

void weight(std::span<cplx> out, std::span<const cplx> in, std::span<const double> w) {
    assert(out.size() == in.size() && in.size() == w.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = in[i] * w[i];
    }
}

double sum(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

double max(std::span<const double> x) {
    double m = -std::numeric_limits<double>::infinity();
    for (double v : x) m = std::max(m, v);
    return m;
}

double min(std::span<const double> x) {
    double m = std::numeric_limits<double>::infinity();
    for (double v : x) m = std::min(m, v);
    return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void sigma12_nodes(int n, std::span<const cplx* const> entries, std::span<double> sigma1,
                   std::span<double> sigma2) {
    assert(entries.size() == static_cast<std::size_t>(n * n));
    for (std::size_t k = 0; k < sigma1.size(); ++k) {
        sigma12_at(n, entries, k, sigma1[k], sigma2[k]);
    }
}

}  // namespace serial

namespace parallel {

void mul_acc(std::span<cplx> out, std::span<const cplx> a, std::span<const cplx> b, cplx scale) {
    assert(out.size() == a.size() && a.size() == b.size());
    const auto size = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        out[i] += scale * (a[i] * b[i]);
    }
}

void axpy(std::span<cplx> out, std::span<const cplx> a, cplx scale) {
    assert(out.size() == a.size());
    const auto size = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        out[i] += scale * a[i];
    }
}

void symbol_mul(std::span<cplx> out, std::span<const cplx> in, std::span<const cplx> symbol) {
    assert(out.size() == in.size() && in.size() == symbol.size());
    const auto size = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        out[i] = in[i] * symbol[i];
    }
}

void weight(std::span<cplx> out, std::span<const cplx> in, std::span<const double> w) {
    assert(out.size() == in.size() && in.size() == w.size());
    const auto size = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < size; ++i) {
        out[i] = in[i] * w[i];
    }
}

double sum(std::span<const double> x) {
    std::array<double, kReductionBlocks> partial{};
    const auto blocks = static_cast<std::ptrdiff_t>(kReductionBlocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const Block r = block_of(static_cast<std::size_t>(b), x.size());
        double s = 0.0;
        for (std::size_t i = r.begin; i < r.end; ++i) s += x[i];
        partial[b] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    std::array<double, kReductionBlocks> partial{};
    const auto blocks = static_cast<std::ptrdiff_t>(kReductionBlocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t blk = 0; blk < blocks; ++blk) {
        const Block r = block_of(static_cast<std::size_t>(blk), a.size());
        double s = 0.0;
        for (std::size_t i = r.begin; i < r.end; ++i) s += a[i] * b[i];
        partial[blk] = s;
    }
    double s = 0.0;
    for (double p : partial) s += p;
    return s;
}

double max(std::span<const double> x) {
    double m = -std::numeric_limits<double>::infinity();
    const auto size = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(max : m)
    for (std::ptrdiff_t i = 0; i < size; ++i) m = std::max(m, x[i]);
    return m;
}

double min(std::span<const double> x) {
    double m = std::numeric_limits<double>::infinity();
    const auto size = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) reduction(min : m)
    for (std::ptrdiff_t i = 0; i < size; ++i) m = std::min(m, x[i]);
    return m;
}

void sigma12_nodes(int n, std::span<const cplx* const> entries, std::span<double> sigma1,
                   std::span<double> sigma2) {
    assert(entries.size() == static_cast<std::size_t>(n * n));
    const auto size = static_cast<std::ptrdiff_t>(sigma1.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < size; ++k) {
        sigma12_at(n, entries, static_cast<std::size_t>(k), sigma1[k], sigma2[k]);
    }
}

}  // namespace parallel

}  // namespace fuyau::kernels
