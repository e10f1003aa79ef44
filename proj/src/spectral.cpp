#include "fuyau/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fuyau/kernels.hpp"

namespace fuyau {

namespace {

std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
fftw_complex* as_fftw(const cplx* p) { return reinterpret_cast<fftw_complex*>(const_cast<cplx*>(p)); }

}  // namespace

const Spectral& Spectral::for_grid(const GridSpec& grid) {
    static std::mutex cache_mutex;
    static std::map<std::tuple<int, int, double>, std::unique_ptr<Spectral>> cache;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto key = std::make_tuple(grid.n, grid.N, grid.period);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::make_unique<Spectral>(grid)).first;
    return *it->second;
}

Spectral::Spectral(const GridSpec& grid) : grid_(grid), m_(grid.node_count()) {
    grid_.validate();
    const int axes = grid_.axes();
    std::vector<int> dims(static_cast<std::size_t>(axes), grid_.N);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        auto* in = fftw_alloc_complex(m_);
        auto* out = fftw_alloc_complex(m_);
        // FFTW_ESTIMATE keeps plan selection (and hence rounding) deterministic.
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        plan_fwd_ = fftw_plan_dft(axes, dims.data(), in, out, FFTW_FORWARD, flags);
        plan_bwd_ = fftw_plan_dft(axes, dims.data(), in, out, FFTW_BACKWARD, flags);
        fftw_free(in);
        fftw_free(out);
    }
    if (plan_fwd_ == nullptr || plan_bwd_ == nullptr) throw std::runtime_error("Spectral: FFTW planning failed");

    const double two_pi_over_p = 2.0 * std::numbers::pi / grid_.period;
    holo_.assign(static_cast<std::size_t>(grid_.n), std::vector<cplx>(m_));
    antiholo_.assign(static_cast<std::size_t>(grid_.n), std::vector<cplx>(m_));
    resolved_.assign(m_, 1.0);
    const int nyq = grid_.N / 2;
    for (std::size_t mode = 0; mode < m_; ++mode) {
        for (int a = 0; a < axes; ++a) {
            if (grid_.index(mode, a) == nyq) resolved_[mode] = 0.0;
        }
        for (int j = 0; j < grid_.n; ++j) {
            const int ix = grid_.index(mode, 2 * j);
            const int iy = grid_.index(mode, 2 * j + 1);
            const double kx = ix == nyq ? 0.0 : two_pi_over_p * wavenumber(mode, 2 * j);
            const double ky = iy == nyq ? 0.0 : two_pi_over_p * wavenumber(mode, 2 * j + 1);
            holo_[static_cast<std::size_t>(j)][mode] = 0.5 * cplx(ky, kx);
            antiholo_[static_cast<std::size_t>(j)][mode] = 0.5 * cplx(-ky, kx);
        }
    }
}

Spectral::~Spectral() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    if (plan_fwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    if (plan_bwd_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

int Spectral::wavenumber(std::size_t mode, int axis) const {
    const int i = grid_.index(mode, axis);
    return i <= grid_.N / 2 ? i : i - grid_.N;
}

std::vector<cplx> Spectral::forward(std::span<const cplx> values) const {
    if (values.size() != m_) throw std::invalid_argument("Spectral::forward: size mismatch");
    std::vector<cplx> out(m_);
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), as_fftw(values.data()), as_fftw(out.data()));
    return out;
}

std::vector<cplx> Spectral::forward(const ScalarField& f) const {
    require_same_grid(f.grid(), grid_, "Spectral::forward");
    std::vector<cplx> in(m_);
    const auto v = f.values();
    for (std::size_t k = 0; k < m_; ++k) in[k] = v[k];
    return forward(in);
}

std::vector<cplx> Spectral::inverse(std::span<const cplx> hat) const {
    if (hat.size() != m_) throw std::invalid_argument("Spectral::inverse: size mismatch");
    std::vector<cplx> out(m_);
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), as_fftw(hat.data()), as_fftw(out.data()));
    const double s = 1.0 / static_cast<double>(m_);
    for (auto& v : out) v *= s;
    return out;
}

ComplexField Spectral::apply(std::span<const cplx> hat, std::span<const cplx> symbol) const {
    std::vector<cplx> tmp(m_);
    kernels::parallel::symbol_mul(tmp, hat, symbol);
    return ComplexField(grid_, inverse(tmp));
}

ComplexField Spectral::apply(std::span<const cplx> hat, std::span<const cplx> s1, std::span<const cplx> s2) const {
    std::vector<cplx> tmp(m_);
    kernels::parallel::symbol_mul(tmp, hat, s1);
    kernels::parallel::symbol_mul(tmp, tmp, s2);
    return ComplexField(grid_, inverse(tmp));
}

namespace {

CovectorField first_derivatives(const Spectral& sp, std::span<const cplx> hat, bool holo) {
    std::vector<ComplexField> comps;
    for (int j = 0; j < sp.grid().n; ++j) {
        comps.push_back(sp.apply(hat, holo ? sp.holo_symbol(j) : sp.antiholo_symbol(j)));
    }
    return CovectorField(std::move(comps));
}

}  // namespace

CovectorField d_holo(const ScalarField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    return first_derivatives(sp, sp.forward(f), true);
}

CovectorField d_holo(const ComplexField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    return first_derivatives(sp, sp.forward(f.values()), true);
}

CovectorField d_antiholo(const ScalarField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    return first_derivatives(sp, sp.forward(f), false);
}

CovectorField d_antiholo(const ComplexField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    return first_derivatives(sp, sp.forward(f.values()), false);
}

HermitianField dd_bar(const ScalarField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    const auto hat = sp.forward(f);
    std::vector<ComplexField> upper;
    for (int i = 0; i < f.grid().n; ++i) {
        for (int j = i; j < f.grid().n; ++j) {
            upper.push_back(sp.apply(hat, sp.holo_symbol(i), sp.antiholo_symbol(j)));
        }
    }
    return HermitianField::from_upper(f.grid(), std::move(upper));
}

ScalarField project_resolved(const ScalarField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    auto hat = sp.forward(f);
    const auto mask = sp.resolved_mask();
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= mask[k];
    const auto back = sp.inverse(hat);
    std::vector<double> v(back.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = back[k].real();
    return ScalarField(f.grid(), std::move(v));
}

ScalarField project_resolved_mean_zero(const ScalarField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    auto hat = sp.forward(f);
    const auto mask = sp.resolved_mask();
    for (std::size_t k = 0; k < hat.size(); ++k) hat[k] *= mask[k];
    hat[0] = 0.0;
    const auto back = sp.inverse(hat);
    std::vector<double> v(back.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = back[k].real();
    return ScalarField(f.grid(), std::move(v));
}

double l2_norm_fourier(const ScalarField& f) {
    const auto& sp = Spectral::for_grid(f.grid());
    const auto hat = sp.forward(f);
    double s = 0.0;
    for (const auto& c : hat) s += std::norm(c);
    const double m = static_cast<double>(hat.size());
    // Parseval: Σ|f_k|² = (1/M) Σ|f̂_κ|², and ∫|f|² = cell_volume · Σ|f_k|².
    return std::sqrt(s / m * f.grid().cell_volume());
}

}  // namespace fuyau
