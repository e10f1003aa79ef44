#pragma once

// Residuals of the continuity family on the flat torus.
//
// For a state (φ, t) with data (α, A, ρ, μ):
//   ω̃ = e^φ·I + tα e^{−φ} ρ + 2nα ∂∂̄φ                          (Hermitian field)
//   Φ ω^n = √−1∂∂̄(e^φ ω − tα e^{−φ} ρ)∧ω^{n−2}
//           + nα √−1∂∂̄φ ∧ √−1∂∂̄φ ∧ ω^{n−2} + tμ ω^n/n!
//   F = C(n,2)(e^{2φ} − 4α e^φ |∂φ|²) + C(n,2)·f,  f from the (1,1)/(2,2)
//       wedge expansion with ρ → tρ, μ → tμ.
// σ₂(ω̃) − F and Φ agree up to the constant factor 2n²(n−1)α.

#include <random>

#include "fuyau/exterior.hpp"
#include "fuyau/grid.hpp"

namespace fuyau {

struct ProblemData {
    GridSpec grid;
    double alpha = 0.0;
    double A = 1.0;
    HermitianField rho;
    ScalarField mu;

    /// Throws std::invalid_argument on α = 0, A ≤ 0, grid mismatch, or
    /// |mean(μ)|·Vol > 1e−10·‖μ‖_{L¹}.
    void validate() const;
};

struct State {
    ScalarField phi;
    double t = 0.0;
};

HermitianField omega_tilde(const State& s, const ProblemData& d);
ScalarField f_term(const State& s, const ProblemData& d);
ScalarField residual_form(const State& s, const ProblemData& d);
/// Φ without the tμ/n! term.
ScalarField residual_form_without_mu(const State& s, const ProblemData& d);
ScalarField rhs_F(const State& s, const ProblemData& d);
/// σ₂(ω̃) − F
ScalarField residual_sigma(const State& s, const ProblemData& d);
/// σ₂(e^{−φ}ω̃) − e^{−2φ}F
ScalarField residual_sigma_rescaled(const State& s, const ProblemData& d);

/// Closed form 2n²(n−1)α of the factor between residual_sigma and residual_form.
double frozen_equivalence_constant(int n, double alpha);

struct EquivalenceFit {
    double kappa = 0.0;              ///< mean of the per-field least-squares fits
    double relative_spread = 0.0;    ///< stddev/|mean| over fields
    std::vector<double> per_field;
};

/// Fits residual_sigma ≈ κ·residual_form over `fields` seeded smooth random φ at
/// time t. `amplitude` ≤ 0 picks a resolution-safe default for the grid.
EquivalenceFit fit_equivalence(const ProblemData& d, double t, int fields = 10, std::uint64_t seed = 20240611,
                               double amplitude = -1.0);

/// κ_n from the fit; throws ConventionError if the relative spread exceeds 1e−8.
double equivalence_constant(const ProblemData& d);

/// Smooth random φ used by the fit and by invariant checks: c + amplitude·(sum of
/// a few degree-1 trig terms). Deterministic in the rng state.
ScalarField smooth_random_phi(const GridSpec& grid, std::mt19937_64& rng, double amplitude, double center = 0.0);
/// Amplitude at which e^φ-type products stay far below aliasing at this grid.
double resolution_safe_amplitude(const GridSpec& grid);

/// μ that makes φ* an exact t = 1 solution: −n!·(Φ without μ)(φ*).
ScalarField manufactured_mu(const ScalarField& phi_star, double alpha, const HermitianField& rho);

}  // namespace fuyau
