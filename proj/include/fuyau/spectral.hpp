#pragma once

// Discrete Fourier differentiation on the periodic grid.
//
// Symbols: ∂_{x_a} ↦ i·k_a with k_a = 2πκ_a/period, and the Nyquist mode
// (κ_a = N/2) mapped to zero so that derivatives of real fields stay real.
//   ∂_{z^j}    ↦ D_j    = ½(i·k_{x_j} + k_{y_j})
//   ∂_{z̄^j}   ↦ Dbar_j = ½(i·k_{x_j} − k_{y_j})
// The "resolved" subspace consists of modes with no axis at Nyquist. Symbols
// are diagonal, so differentiation commutes with projecting onto it; the
// nonlinear solver works inside it.

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "fuyau/grid.hpp"

namespace fuyau {

class Spectral {
public:
    /// Shared, lazily created engine for `grid`. Thread-safe.
    static const Spectral& for_grid(const GridSpec& grid);

    explicit Spectral(const GridSpec& grid);
    ~Spectral();
    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const GridSpec& grid() const { return grid_; }

    /// Unnormalized forward DFT.
    std::vector<cplx> forward(std::span<const cplx> values) const;
    std::vector<cplx> forward(const ScalarField& f) const;
    /// Inverse DFT including the 1/M factor.
    std::vector<cplx> inverse(std::span<const cplx> hat) const;

    std::span<const cplx> holo_symbol(int j) const { return holo_[static_cast<std::size_t>(j)]; }
    std::span<const cplx> antiholo_symbol(int j) const { return antiholo_[static_cast<std::size_t>(j)]; }
    /// 1 on resolved modes, 0 on modes with any axis at Nyquist.
    std::span<const double> resolved_mask() const { return resolved_; }
    /// Signed integer wavenumber of `mode` along `axis` (Nyquist reported as N/2).
    int wavenumber(std::size_t mode, int axis) const;

    /// Inverse transform of hat·symbol.
    ComplexField apply(std::span<const cplx> hat, std::span<const cplx> symbol) const;
    /// Inverse transform of hat·s1·s2.
    ComplexField apply(std::span<const cplx> hat, std::span<const cplx> s1, std::span<const cplx> s2) const;

private:
    GridSpec grid_;
    std::size_t m_;
    void* plan_fwd_ = nullptr;
    void* plan_bwd_ = nullptr;
    std::vector<std::vector<cplx>> holo_;
    std::vector<std::vector<cplx>> antiholo_;
    std::vector<double> resolved_;
};

/// ∂f = (∂_{z^1} f, …, ∂_{z^n} f).
CovectorField d_holo(const ScalarField& f);
CovectorField d_holo(const ComplexField& f);
/// ∂̄f = (∂_{z̄^1} f, …, ∂_{z̄^n} f).
CovectorField d_antiholo(const ScalarField& f);
CovectorField d_antiholo(const ComplexField& f);

/// φ_{ij̄} = ∂_{z^i}∂_{z̄^j} f for real f. Hermitian at every node, trace = ¼Δf.
HermitianField dd_bar(const ScalarField& f);

/// Orthogonal projection onto the resolved (Nyquist-free) modes.
ScalarField project_resolved(const ScalarField& f);
/// Projection onto resolved modes with zero mean.
ScalarField project_resolved_mean_zero(const ScalarField& f);
/// L² norm computed from Fourier coefficients (Parseval).
double l2_norm_fourier(const ScalarField& f);

}  // namespace fuyau
