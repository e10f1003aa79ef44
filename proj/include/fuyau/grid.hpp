#pragma once

// Periodic grid on the flat complex n-torus C^n / (period·Z)^{2n} and the
// field types sampled on it.
//
// Real axes are ordered (x_1, y_1, x_2, y_2, ..., x_n, y_n), z^j = x_j + i y_j.
// Nodes are stored row-major with axis 0 (x_1) varying slowest.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fuyau/small_matrix.hpp"

namespace fuyau {

struct GridSpec {
    int n = 2;            ///< complex dimension, 2 or 3
    int N = 16;           ///< points per real axis, power of two
    double period = 1.0;  ///< side length of each real axis

    /// Throws std::invalid_argument on n ∉ {2,3}, N not a power of two ≥ 4,
    /// or non-positive period.
    void validate() const;

    int axes() const { return 2 * n; }
    std::size_t node_count() const;
    double volume() const;
    double cell_volume() const;
    /// Per-axis index of `node` along real axis `axis`.
    int index(std::size_t node, int axis) const;
    double coord(std::size_t node, int axis) const;

    bool operator==(const GridSpec& o) const { return n == o.n && N == o.N && period == o.period; }
    bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where);

class ScalarField {
public:
    ScalarField() = default;
    /// Throws if the size does not match or any value is non-finite.
    ScalarField(GridSpec grid, std::vector<double> values);

    static ScalarField constant(const GridSpec& grid, double c);
    /// f(coords) with coords = (x_1, y_1, ..., x_n, y_n).
    static ScalarField from_function(const GridSpec& grid,
                                     const std::function<double(std::span<const double>)>& f);

    const GridSpec& grid() const { return grid_; }
    std::span<const double> values() const { return values_; }
    double operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }

private:
    GridSpec grid_{};
    std::vector<double> values_;
};

class ComplexField {
public:
    ComplexField() = default;
    ComplexField(GridSpec grid, std::vector<cplx> values);

    static ComplexField constant(const GridSpec& grid, cplx c);
    static ComplexField from_real(const ScalarField& f);

    const GridSpec& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    /// Mutable access for kernels that fill a freshly allocated field.
    std::span<cplx> mutable_values() { return values_; }
    cplx operator[](std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

    ScalarField real() const;
    ScalarField imag() const;
    ComplexField conj() const;
    double max_abs() const;
    double max_abs_imag() const;

private:
    GridSpec grid_{};
    std::vector<cplx> values_;
};

/// n complex components per node, e.g. (φ_1, …, φ_n) for ∂φ.
class CovectorField {
public:
    CovectorField() = default;
    explicit CovectorField(std::vector<ComplexField> components);

    const GridSpec& grid() const { return components_.front().grid(); }
    int dim() const { return static_cast<int>(components_.size()); }
    const ComplexField& operator[](int j) const { return components_[static_cast<std::size_t>(j)]; }
    CovectorField conj() const;

private:
    std::vector<ComplexField> components_;
};

/// n×n Hermitian matrix per node. Storage is full entry-major with the lower
/// triangle equal to the conjugate of the upper one and a real diagonal, both
/// enforced exactly at construction.
class HermitianField {
public:
    HermitianField() = default;

    /// From entries (i ≤ j) in row-major upper-triangle order.
    static HermitianField from_upper(const GridSpec& grid, std::vector<ComplexField> upper);
    /// From all n² entries; throws if the asymmetry exceeds 1e−13 of the field scale.
    static HermitianField from_full(const GridSpec& grid, std::vector<ComplexField> entries);
    static HermitianField constant(const GridSpec& grid, const HermMat& m);
    static HermitianField scalar_identity(const ScalarField& s);
    static HermitianField zero(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int dim() const { return grid_.n; }
    const ComplexField& operator()(int i, int j) const {
        return entries_[static_cast<std::size_t>(i * grid_.n + j)];
    }
    HermMat matrix_at(std::size_t node) const;
    /// Pointers to entry data, entry-major, for node kernels.
    std::vector<const cplx*> entry_pointers() const;

    ScalarField trace() const;
    HermitianField scaled(const ScalarField& w) const;
    HermitianField scaled(double w) const;
    HermitianField operator+(const HermitianField& o) const;

private:
    GridSpec grid_{};
    std::vector<ComplexField> entries_;
};

// ---- pointwise arithmetic -------------------------------------------------

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
ScalarField operator+(const ScalarField& a, double c);
ScalarField map(const ScalarField& a, const std::function<double(double)>& f);
ScalarField exp(const ScalarField& a);

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& a);
ComplexField operator*(const ScalarField& w, const ComplexField& a);

// ---- integrals and norms ----------------------------------------------------

/// Arithmetic mean over nodes (= (1/Vol)∫f, exact for trig polynomials below Nyquist).
double mean(const ScalarField& f);
double integral(const ScalarField& f);
/// (∫|f|^p)^{1/p}; throws std::invalid_argument for p < 1.
double lp_norm(const ScalarField& f, double p);
double sup(const ScalarField& f);
double inf(const ScalarField& f);
double sup_abs(const ScalarField& f);
/// ∫ f g
double inner(const ScalarField& f, const ScalarField& g);

}  // namespace fuyau
