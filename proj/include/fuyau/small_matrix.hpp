#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <stdexcept>

namespace fuyau {

using cplx = std::complex<double>;

/// Dense n×n complex matrix for n ≤ 3, used for per-node Hermitian data
/// (coefficient matrices of real (1,1)-forms).
struct HermMat {
    int n = 0;
    std::array<cplx, 9> a{};

    HermMat() = default;
    explicit HermMat(int dim) : n(dim) {
        if (dim < 1 || dim > 3) throw std::invalid_argument("HermMat: dimension must be 1..3");
    }

    cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(i * n + j)]; }
    const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }

    static HermMat identity(int dim) {
        HermMat m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static HermMat diagonal(std::initializer_list<double> d) {
        HermMat m(static_cast<int>(d.size()));
        int i = 0;
        for (double v : d) {
            m(i, i) = v;
            ++i;
        }
        return m;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (int i = 0; i < n; ++i) t += (*this)(i, i);
        return t;
    }

    /// Frobenius norm.
    double norm() const {
        double s = 0.0;
        for (int k = 0; k < n * n; ++k) s += std::norm(a[static_cast<std::size_t>(k)]);
        return std::sqrt(s);
    }

    /// max |A_ij − conj(A_ji)|
    double asymmetry() const {
        double m = 0.0;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return m;
    }

    HermMat operator+(const HermMat& o) const {
        HermMat r(n);
        for (int k = 0; k < n * n; ++k) r.a[k] = a[k] + o.a[k];
        return r;
    }
    HermMat operator-(const HermMat& o) const {
        HermMat r(n);
        for (int k = 0; k < n * n; ++k) r.a[k] = a[k] - o.a[k];
        return r;
    }
    HermMat operator*(double s) const {
        HermMat r(n);
        for (int k = 0; k < n * n; ++k) r.a[k] = a[k] * s;
        return r;
    }
    HermMat matmul(const HermMat& o) const {
        HermMat r(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                cplx s = 0.0;
                for (int k = 0; k < n; ++k) s += (*this)(i, k) * o(k, j);
                r(i, j) = s;
            }
        return r;
    }
};

}  // namespace fuyau
