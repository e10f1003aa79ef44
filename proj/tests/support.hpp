#pragma once

// Shared problem builders for the test binaries.

#include <cmath>
#include <numbers>
#include <random>

#include "fuyau/assembly.hpp"
#include "fuyau/trig.hpp"

namespace support {

/// ρ = c·I + small smooth diagonal wiggle, μ a mean-zero smooth field.
inline fuyau::ProblemData generic_problem(const fuyau::GridSpec& g, double alpha = 0.05, double A = 0.5,
                                          std::uint64_t seed = 1, double mu_amp = 0.3) {
    std::mt19937_64 rng(seed);
    const double amp = fuyau::resolution_safe_amplitude(g);
    auto rho = fuyau::HermitianField::constant(g, fuyau::HermMat::identity(g.n) * 0.1) +
               fuyau::HermitianField::scalar_identity(fuyau::smooth_random_phi(g, rng, 0.5 * amp));
    fuyau::ScalarField mu = fuyau::smooth_random_phi(g, rng, mu_amp);
    mu = mu + (-fuyau::mean(mu));
    return fuyau::ProblemData{g, alpha, A, rho, mu};
}

inline fuyau::ScalarField manufactured_phi(const fuyau::GridSpec& g, double c = 2.0) {
    return fuyau::ScalarField::from_function(g, [c, p = g.period](std::span<const double> x) {
        const double w = 2.0 * std::numbers::pi / p;
        return c + 0.3 * std::sin(w * x[0]) * std::cos(w * x[3]);
    });
}

struct Manufactured {
    fuyau::ProblemData data;
    fuyau::ScalarField phi_star;
};

/// ρ = 0.1·identity, φ* = 2 + 0.3 sin(2πx₁)cos(2πy₂), μ from Φ(φ*, 1) = 0, A = ‖e^{−φ*}‖_{L¹}.
inline Manufactured manufactured(int n, int N, double alpha) {
    const fuyau::GridSpec g{n, N, 1.0};
    const auto phi = manufactured_phi(g);
    const auto rho = fuyau::HermitianField::constant(g, fuyau::HermMat::identity(n) * 0.1);
    const auto mu = fuyau::manufactured_mu(phi, alpha, rho);
    const double A = fuyau::integral(fuyau::exp(-1.0 * phi));
    return {fuyau::ProblemData{g, alpha, A, rho, mu}, phi};
}

}  // namespace support
