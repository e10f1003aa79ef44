#pragma once

// Elementary symmetric functions σ_k, the Γ₂ cone, and derivatives of σ₂ on
// Hermitian matrices (n ≤ 3).

#include <array>
#include <random>
#include <span>
#include <vector>

#include "fuyau/grid.hpp"
#include "fuyau/small_matrix.hpp"

namespace fuyau {

/// Hermitian matrix with entries drawn from N(0, scale²) (diagonal real).
HermMat random_hermitian(int n, std::mt19937_64& rng, double scale = 1.0);

struct ConeMargin {
    double sigma1 = 0.0;
    double sigma2 = 0.0;
    bool inside = false;  ///< σ₁ > 0 and σ₂ > 0, strictly
};

/// σ_k of λ via the recurrence e_k ← e_k + λ_i e_{k−1}. Throws for k ∉ [1, |λ|].
double sigma_k_eig(std::span<const double> lambda, int k);

/// Throws std::invalid_argument if max |A_ij − conj A_ji| > 1e−12·‖A‖_F.
void require_hermitian(const HermMat& A, const char* where);

/// ½[(tr A)² − tr(A²)]
double sigma2_matrix(const HermMat& A);

/// Ascending eigenvalues. Closed form for n = 2 and n = 3, Jacobi sweeps when the
/// cubic's discriminant is too small to resolve.
std::vector<double> eigenvalues(const HermMat& A);

ConeMargin in_gamma2(const HermMat& A);

/// F^{ij} = ∂σ₂/∂A_{ij} = tr(A)δ_{ij} − A_{ji}
HermMat F_first(const HermMat& A);

/// ∂²σ₂/∂A_{ij}∂A_{kl}: 1 if i=j, k=l, i≠k; −1 if i=l, k=j, i≠k; 0 otherwise.
double F_second(int i, int j, int k, int l);

/// Σ F_first(A)_{ij} H_{ij} (real for Hermitian A, H).
double contract_first(const HermMat& F, const HermMat& H);
/// Σ F_second(i,j,k,l) H_{ij} K_{kl}
double contract_second(int n, const HermMat& H, const HermMat& K);

/// Pointwise σ₁, σ₂ of a Hermitian field.
struct SigmaFields {
    ScalarField sigma1;
    ScalarField sigma2;
};
SigmaFields sigma12(const HermitianField& A);
/// Minima of σ₁ and σ₂ over nodes; inside iff both are strictly positive.
ConeMargin field_cone_margin(const HermitianField& A);

}  // namespace fuyau
