#pragma once

// Pointwise exterior algebra of (p,q)-forms on C^n, n ≤ 3.
//
// A form is Σ c_{J,K} dz^J ∧ dz̄^K over strictly increasing multi-indices J
// (|J| = p) and K (|K| = q), stored as bitmasks. Coefficients are literal:
// every factor of √−1 lives inside c_{J,K}. With this convention
//   * a real (1,1)-form √−1 Σ A_{jk̄} dz^j∧dz̄^k has c_{jk} = √−1·A_{jk};
//   * a (p,q)-form with p = q is real iff c_{K,J} = (−1)^{pq} conj(c_{J,K});
//   * ω^n = n!·(√−1)^n·(−1)^{n(n−1)/2} dz^{1..n}∧dz̄^{1..n}, and top_ratio
//     divides the top coefficient by that number.
// Forms of bidegree exceeding n in either slot have no basis elements and are
// the zero form.

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "fuyau/grid.hpp"

namespace fuyau {

/// Bitmasks of the k-element subsets of {0..n−1}, ascending. Empty if k > n.
const std::vector<unsigned>& index_sets(int n, int k);

class FormPQ {
public:
    FormPQ() = default;
    /// Zero form with `nodes` samples per coefficient and no grid (pointwise use).
    FormPQ(int n, int p, int q, std::size_t nodes = 1);
    /// Zero form sampled on `grid`.
    FormPQ(const GridSpec& grid, int p, int q);

    int n() const { return n_; }
    int p() const { return p_; }
    int q() const { return q_; }
    std::size_t nodes() const { return nodes_; }
    const std::optional<GridSpec>& grid() const { return grid_; }

    /// Number of basis elements C(n,p)·C(n,q).
    std::size_t size() const { return coeffs_.size(); }
    std::span<cplx> coeff(unsigned J, unsigned K);
    std::span<const cplx> coeff(unsigned J, unsigned K) const;
    std::span<cplx> coeff_at(std::size_t slot) { return coeffs_[slot]; }
    std::span<const cplx> coeff_at(std::size_t slot) const { return coeffs_[slot]; }
    unsigned holo_index(std::size_t slot) const;
    unsigned antiholo_index(std::size_t slot) const;

    /// Reality condition c_{K,J} = (−1)^{pq} conj(c_{J,K}) within tol·(1+scale).
    bool is_real(double tol = 1e-12) const;
    double max_abs() const;

    FormPQ operator+(const FormPQ& o) const;
    FormPQ operator-(const FormPQ& o) const;
    FormPQ operator*(cplx s) const;

    /// True if both forms share node count, dimension and (when set) grid.
    bool compatible(const FormPQ& o) const;

private:
    int n_ = 0, p_ = 0, q_ = 0;
    std::size_t nodes_ = 0;
    std::optional<GridSpec> grid_;
    std::vector<std::vector<cplx>> coeffs_;
    std::vector<int> slot_of_;  // (J << n | K) -> slot, −1 if absent
};

/// Pointwise form with N(0,1) complex coefficients.
FormPQ random_form(int n, int p, int q, std::mt19937_64& rng, std::size_t nodes = 1);

FormPQ scalar_form(const ComplexField& c);
FormPQ scalar_form(const ScalarField& c);
FormPQ scale(const FormPQ& a, const ScalarField& w);
FormPQ scale(const FormPQ& a, const ComplexField& w);

/// √−1 Σ A_{jk̄} dz^j∧dz̄^k
FormPQ herm_to_form(const HermitianField& A);
FormPQ herm_to_form(const HermMat& A);
HermitianField form_to_herm(const FormPQ& a);
HermMat form_to_herm_at(const FormPQ& a, std::size_t node);

/// (1,0)-form Σ v_j dz^j, or (0,1)-form Σ v_j dz̄^j.
FormPQ holo_covector_form(const CovectorField& v);
FormPQ antiholo_covector_form(const CovectorField& v);

FormPQ wedge(const FormPQ& a, const FormPQ& b);
FormPQ omega_power(int n, int k, std::size_t nodes = 1);
FormPQ omega_power(const GridSpec& grid, int k);

/// Top coefficient divided by that of ω^n. Requires bidegree (n,n).
std::vector<cplx> top_ratio(const FormPQ& a);
/// Same on a gridded form; throws ConventionError if the imaginary residue
/// exceeds imag_tol·max(1, sup|real part|).
ScalarField top_ratio_real(const FormPQ& a, double imag_tol = 1e-9);

/// ∂a and ∂̄a by spectral differentiation of each coefficient. Requires a grid.
FormPQ d_form_holo(const FormPQ& a);
FormPQ d_form_antiholo(const FormPQ& a);

/// n!·(√−1)^n·(−1)^{n(n−1)/2}, the top coefficient of ω^n.
cplx omega_top_coefficient(int n);

/// C(n,2)·top_ratio(ω²∧ω^{n−2}) / σ₂(identity); equals 1 under the convention above.
double sigma2_convention_constant(int n);

}  // namespace fuyau
