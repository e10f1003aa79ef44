#pragma once

// Linearization of the form residual at a reference state, its exact discrete
// adjoint, and the kernel-aware Fredholm solve used by Newton.
//
//   L u  = R(√−1∂∂̄(u·G)) + 2nα·R(P ∧ √−1∂∂̄u)
//   L* v = R(G ∧ √−1∂∂̄v) + 2nα·R(√−1∂∂̄(v·P))
// where R(β) = top_ratio(β∧ω^{n−2}), G = e^{φ̂}ω + t̂α e^{−φ̂}ρ and P = √−1∂∂̄φ̂.
// The grid-level product rule is not exact, so L* keeps the derivatives on the
// products; that makes ⟨v, Lu⟩ = ⟨L*v, u⟩ hold to rounding.

#include <cstdint>
#include <optional>

#include "fuyau/assembly.hpp"

namespace fuyau {

/// R(√−1∂∂̄(√−1 B)) for a Hermitian field B, one Fourier pass.
ScalarField ddbar_top_ratio(const HermitianField& B);
/// R(√−1 A ∧ √−1 B) = ⟨F_first(A), B⟩/(n(n−1)) pointwise.
ScalarField mixed_top_ratio(const HermitianField& A, const HermitianField& B);

class LinearOperator {
public:
    LinearOperator(State reference, ProblemData data);

    ScalarField apply_L(const ScalarField& u) const;
    ScalarField apply_Lstar(const ScalarField& v) const;
    /// R(√−1∂∂̄v ∧ ω̃): the continuum form of the adjoint without the
    /// discrete product-rule corrections. Used only for cross-checks.
    ScalarField apply_Lstar_pointwise(const ScalarField& v) const;

    /// Fourier-diagonal approximation of L frozen at the node mean of ω̃ (or of
    /// e^{φ̂}·identity when that mean lies outside Γ₂), inverted on resolved
    /// mean-zero modes and zero elsewhere.
    ScalarField apply_preconditioner(const ScalarField& r) const;
    bool preconditioner_uses_fallback() const { return precond_fallback_; }

    const State& reference() const { return ref_; }
    const ProblemData& data() const { return data_; }
    /// e^{−φ̂}
    const ScalarField& weight() const { return weight_; }

private:
    State ref_;
    ProblemData data_;
    HermitianField G_;
    HermitianField P_;
    HermitianField omega_tilde_;
    ScalarField weight_;
    std::vector<double> precond_symbol_inv_;
    bool precond_fallback_ = false;
};

struct GmresResult {
    ScalarField x;
    int iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

struct GmresOptions {
    double tol = 1e-12;
    int restart = 40;
    int max_iterations = 600;
};

/// Right-preconditioned restarted GMRES for ΠL x = b on resolved mean-zero fields.
GmresResult gmres_resolved(const LinearOperator& op, const ScalarField& b, const GmresOptions& opt);

struct KernelInfo {
    ScalarField u0;            ///< 1 + w with ΠL w = −ΠL 1
    double weighted_mass = 0;  ///< ∫ u0 e^{−φ̂}
};

struct LinearSolveOptions {
    GmresOptions gmres{};
    /// Run the second-null-vector probe before solving.
    bool probe_kernel = false;
    std::uint64_t probe_seed = 7;
};

struct LinearSolveResult {
    ScalarField u;
    KernelInfo kernel;
    int iterations = 0;
    double relative_residual = 0.0;
    /// |mean(rhs)|·Vol removed before solving.
    double rhs_defect = 0.0;
};

KernelInfo compute_kernel(const LinearOperator& op, const GmresOptions& opt);

/// Throws KernelDegeneracyError if ΠL has a null vector in the resolved mean-zero space.
void probe_kernel_dimension(const LinearOperator& op, const GmresOptions& opt, std::uint64_t seed);

/// u with ΠLu = Π rhs (mean removed) and ∫u e^{−φ̂} = 0. Throws LinearSolveError
/// when GMRES does not reach the tolerance.
LinearSolveResult solve_linear(const LinearOperator& op, const ScalarField& rhs, const LinearSolveOptions& opt = {});

}  // namespace fuyau
