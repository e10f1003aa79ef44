#include "fuyau/exterior.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <string>

#include "fuyau/errors.hpp"
#include "fuyau/kernels.hpp"
#include "fuyau/spectral.hpp"

namespace fuyau {

namespace {

int popcount(unsigned m) { return std::popcount(m); }

/// Sign of the permutation merging increasing index sets a then b (disjoint).
int merge_sign(unsigned a, unsigned b) {
    int inversions = 0;
    for (unsigned x = a; x != 0; x &= x - 1) {
        const int i = std::countr_zero(x);
        inversions += popcount(b & ((1u << i) - 1u));
    }
    return (inversions & 1) ? -1 : 1;
}

void require_compatible(const FormPQ& a, const FormPQ& b, const char* where) {
    if (!a.compatible(b)) throw GridMismatch(std::string(where) + ": forms live on different grids");
}

}  // namespace

const std::vector<unsigned>& index_sets(int n, int k) {
    static const auto table = [] {
        std::array<std::array<std::vector<unsigned>, 5>, 4> t;
        for (int nn = 0; nn <= 3; ++nn) {
            for (unsigned m = 0; m < (1u << nn); ++m) t[nn][popcount(m)].push_back(m);
        }
        return t;
    }();
    if (n < 1 || n > 3) throw std::invalid_argument("index_sets: n must be 1..3");
    if (k < 0) throw std::invalid_argument("index_sets: negative degree");
    static const std::vector<unsigned> empty;
    if (k > n) return empty;
    return table[n][k];
}

FormPQ::FormPQ(int n, int p, int q, std::size_t nodes) : n_(n), p_(p), q_(q), nodes_(nodes) {
    if (p < 0 || q < 0) throw std::invalid_argument("FormPQ: negative bidegree");
    const auto& js = index_sets(n, p);
    const auto& ks = index_sets(n, q);
    coeffs_.assign(js.size() * ks.size(), std::vector<cplx>(nodes));
    slot_of_.assign(std::size_t{1} << (2 * n), -1);
    for (std::size_t a = 0; a < js.size(); ++a)
        for (std::size_t b = 0; b < ks.size(); ++b)
            slot_of_[(js[a] << n) | ks[b]] = static_cast<int>(a * ks.size() + b);
}

FormPQ::FormPQ(const GridSpec& grid, int p, int q) : FormPQ(grid.n, p, q, grid.node_count()) {
    grid_ = grid;
}

std::span<cplx> FormPQ::coeff(unsigned J, unsigned K) {
    const int s = slot_of_.at((J << n_) | K);
    if (s < 0) throw std::out_of_range("FormPQ::coeff: index set does not match bidegree");
    return coeffs_[static_cast<std::size_t>(s)];
}

std::span<const cplx> FormPQ::coeff(unsigned J, unsigned K) const {
    const int s = slot_of_.at((J << n_) | K);
    if (s < 0) throw std::out_of_range("FormPQ::coeff: index set does not match bidegree");
    return coeffs_[static_cast<std::size_t>(s)];
}

unsigned FormPQ::holo_index(std::size_t slot) const {
    return index_sets(n_, p_)[slot / index_sets(n_, q_).size()];
}

unsigned FormPQ::antiholo_index(std::size_t slot) const {
    return index_sets(n_, q_)[slot % index_sets(n_, q_).size()];
}

bool FormPQ::compatible(const FormPQ& o) const {
    if (n_ != o.n_ || nodes_ != o.nodes_) return false;
    if (grid_ && o.grid_ && *grid_ != *o.grid_) return false;
    return true;
}

double FormPQ::max_abs() const {
    double m = 0.0;
    for (const auto& c : coeffs_)
        for (const auto& v : c) m = std::max(m, std::abs(v));
    return m;
}

bool FormPQ::is_real(double tol) const {
    if (p_ != q_) return false;
    const double bound = tol * (1.0 + max_abs());
    const double sign = ((p_ * q_) & 1) ? -1.0 : 1.0;
    for (std::size_t s = 0; s < coeffs_.size(); ++s) {
        const auto& mirror = coeff(antiholo_index(s), holo_index(s));
        const auto& c = coeffs_[s];
        for (std::size_t k = 0; k < nodes_; ++k) {
            if (std::abs(mirror[k] - sign * std::conj(c[k])) > bound) return false;
        }
    }
    return true;
}

FormPQ FormPQ::operator+(const FormPQ& o) const {
    require_compatible(*this, o, "FormPQ::operator+");
    if (p_ != o.p_ || q_ != o.q_) throw std::invalid_argument("FormPQ::operator+: bidegree mismatch");
    FormPQ r = *this;
    if (!r.grid_) r.grid_ = o.grid_;
    for (std::size_t s = 0; s < coeffs_.size(); ++s) kernels::parallel::axpy(r.coeffs_[s], o.coeffs_[s], 1.0);
    return r;
}

FormPQ FormPQ::operator-(const FormPQ& o) const { return *this + o * cplx(-1.0); }

FormPQ FormPQ::operator*(cplx s) const {
    FormPQ r = *this;
    for (auto& c : r.coeffs_)
        for (auto& v : c) v *= s;
    return r;
}

FormPQ random_form(int n, int p, int q, std::mt19937_64& rng, std::size_t nodes) {
    std::normal_distribution<double> nd;
    FormPQ f(n, p, q, nodes);
    for (std::size_t s = 0; s < f.size(); ++s)
        for (auto& v : f.coeff_at(s)) v = cplx(nd(rng), nd(rng));
    return f;
}

FormPQ scalar_form(const ComplexField& c) {
    FormPQ f(c.grid(), 0, 0);
    auto dst = f.coeff(0, 0);
    std::copy(c.values().begin(), c.values().end(), dst.begin());
    return f;
}

FormPQ scalar_form(const ScalarField& c) { return scalar_form(ComplexField::from_real(c)); }

FormPQ scale(const FormPQ& a, const ComplexField& w) {
    if (a.nodes() != w.size() || (a.grid() && *a.grid() != w.grid()))
        throw GridMismatch("scale: weight does not match form grid");
    FormPQ r(w.grid(), a.p(), a.q());
    for (std::size_t s = 0; s < a.size(); ++s) kernels::parallel::symbol_mul(r.coeff_at(s), a.coeff_at(s), w.values());
    return r;
}

FormPQ scale(const FormPQ& a, const ScalarField& w) { return scale(a, ComplexField::from_real(w)); }

FormPQ herm_to_form(const HermitianField& A) {
    const int n = A.dim();
    FormPQ f(A.grid(), 1, 1);
    const cplx I(0.0, 1.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            auto dst = f.coeff(1u << j, 1u << k);
            const auto src = A(j, k).values();
            for (std::size_t m = 0; m < dst.size(); ++m) dst[m] = I * src[m];
        }
    return f;
}

FormPQ herm_to_form(const HermMat& A) {
    FormPQ f(A.n, 1, 1, 1);
    const cplx I(0.0, 1.0);
    for (int j = 0; j < A.n; ++j)
        for (int k = 0; k < A.n; ++k) f.coeff(1u << j, 1u << k)[0] = I * A(j, k);
    return f;
}

HermMat form_to_herm_at(const FormPQ& a, std::size_t node) {
    if (a.p() != 1 || a.q() != 1) throw std::invalid_argument("form_to_herm: expected a (1,1)-form");
    HermMat m(a.n());
    const cplx minus_i(0.0, -1.0);
    for (int j = 0; j < a.n(); ++j)
        for (int k = 0; k < a.n(); ++k) m(j, k) = minus_i * a.coeff(1u << j, 1u << k)[node];
    return m;
}

HermitianField form_to_herm(const FormPQ& a) {
    if (a.p() != 1 || a.q() != 1) throw std::invalid_argument("form_to_herm: expected a (1,1)-form");
    if (!a.grid()) throw std::invalid_argument("form_to_herm: form has no grid");
    const GridSpec& g = *a.grid();
    const cplx minus_i(0.0, -1.0);
    std::vector<ComplexField> entries;
    for (int j = 0; j < a.n(); ++j)
        for (int k = 0; k < a.n(); ++k) {
            const auto src = a.coeff(1u << j, 1u << k);
            std::vector<cplx> v(src.size());
            for (std::size_t m = 0; m < v.size(); ++m) v[m] = minus_i * src[m];
            entries.emplace_back(g, std::move(v));
        }
    return HermitianField::from_full(g, std::move(entries));
}

FormPQ holo_covector_form(const CovectorField& v) {
    FormPQ f(v.grid(), 1, 0);
    for (int j = 0; j < v.dim(); ++j) {
        auto dst = f.coeff(1u << j, 0);
        std::copy(v[j].values().begin(), v[j].values().end(), dst.begin());
    }
    return f;
}

FormPQ antiholo_covector_form(const CovectorField& v) {
    FormPQ f(v.grid(), 0, 1);
    for (int j = 0; j < v.dim(); ++j) {
        auto dst = f.coeff(0, 1u << j);
        std::copy(v[j].values().begin(), v[j].values().end(), dst.begin());
    }
    return f;
}

FormPQ wedge(const FormPQ& a, const FormPQ& b) {
    require_compatible(a, b, "wedge");
    const int n = a.n();
    FormPQ r = a.grid() ? FormPQ(*a.grid(), a.p() + b.p(), a.q() + b.q())
               : b.grid() ? FormPQ(*b.grid(), a.p() + b.p(), a.q() + b.q())
                          : FormPQ(n, a.p() + b.p(), a.q() + b.q(), a.nodes());
    if (r.size() == 0) return r;
    // dz^J1∧dz̄^K1∧dz^J2∧dz̄^K2 = (−1)^{|K1||J2|} dz^J1∧dz^J2∧dz̄^K1∧dz̄^K2
    const int swap_sign = ((a.q() * b.p()) & 1) ? -1 : 1;
    for (std::size_t sa = 0; sa < a.size(); ++sa) {
        const unsigned J1 = a.holo_index(sa), K1 = a.antiholo_index(sa);
        for (std::size_t sb = 0; sb < b.size(); ++sb) {
            const unsigned J2 = b.holo_index(sb), K2 = b.antiholo_index(sb);
            if ((J1 & J2) != 0 || (K1 & K2) != 0) continue;
            const int sign = swap_sign * merge_sign(J1, J2) * merge_sign(K1, K2);
            kernels::parallel::mul_acc(r.coeff(J1 | J2, K1 | K2), a.coeff_at(sa), b.coeff_at(sb),
                                       static_cast<double>(sign));
        }
    }
    return r;
}

FormPQ omega_power(int n, int k, std::size_t nodes) {
    if (k < 0 || k > n) throw std::invalid_argument("omega_power: k must lie in [0, n]");
    FormPQ r(n, 0, 0, nodes);
    std::fill(r.coeff(0, 0).begin(), r.coeff(0, 0).end(), cplx(1.0));
    if (k == 0) return r;
    const FormPQ w = herm_to_form(HermMat::identity(n));
    FormPQ wn(n, 1, 1, nodes);
    for (std::size_t s = 0; s < w.size(); ++s)
        std::fill(wn.coeff_at(s).begin(), wn.coeff_at(s).end(), w.coeff_at(s)[0]);
    for (int i = 0; i < k; ++i) r = wedge(r, wn);
    return r;
}

FormPQ omega_power(const GridSpec& grid, int k) {
    const FormPQ pointwise = omega_power(grid.n, k, 1);
    FormPQ r(grid, k, k);
    for (std::size_t s = 0; s < r.size(); ++s)
        std::fill(r.coeff_at(s).begin(), r.coeff_at(s).end(), pointwise.coeff_at(s)[0]);
    return r;
}

cplx omega_top_coefficient(int n) {
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    cplx ipow(1.0, 0.0);
    for (int i = 0; i < n; ++i) ipow *= cplx(0.0, 1.0);
    const double sign = ((n * (n - 1) / 2) & 1) ? -1.0 : 1.0;
    return fact * sign * ipow;
}

std::vector<cplx> top_ratio(const FormPQ& a) {
    if (a.p() != a.n() || a.q() != a.n()) throw std::invalid_argument("top_ratio: form is not of bidegree (n,n)");
    const unsigned all = (1u << a.n()) - 1u;
    const cplx c = omega_top_coefficient(a.n());
    const auto src = a.coeff(all, all);
    std::vector<cplx> out(src.size());
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = src[k] / c;
    return out;
}

ScalarField top_ratio_real(const FormPQ& a, double imag_tol) {
    if (!a.grid()) throw std::invalid_argument("top_ratio_real: form has no grid");
    const auto r = top_ratio(a);
    double re = 0.0, im = 0.0;
    std::vector<double> v(r.size());
    for (std::size_t k = 0; k < r.size(); ++k) {
        v[k] = r[k].real();
        re = std::max(re, std::abs(r[k].real()));
        im = std::max(im, std::abs(r[k].imag()));
    }
    if (im > imag_tol * std::max(1.0, re)) {
        throw ConventionError("top_ratio_real: imaginary residue " + std::to_string(im) + " on a form expected to be real");
    }
    return ScalarField(*a.grid(), std::move(v));
}

namespace {

FormPQ d_form(const FormPQ& a, bool holo) {
    if (!a.grid()) throw std::invalid_argument("d_form: form has no grid");
    const GridSpec& g = *a.grid();
    const int n = a.n();
    FormPQ r(g, a.p() + (holo ? 1 : 0), a.q() + (holo ? 0 : 1));
    if (r.size() == 0) return r;
    const auto& sp = Spectral::for_grid(g);
    for (std::size_t s = 0; s < a.size(); ++s) {
        const unsigned J = a.holo_index(s), K = a.antiholo_index(s);
        const auto hat = sp.forward(a.coeff_at(s));
        for (int m = 0; m < n; ++m) {
            const unsigned bit = 1u << m;
            if ((holo ? J : K) & bit) continue;
            const unsigned below = bit - 1u;
            int sign;
            ComplexField deriv;
            if (holo) {
                // dz^m ∧ dz^J: move dz^m past the indices of J smaller than m.
                sign = (popcount(J & below) & 1) ? -1 : 1;
                deriv = sp.apply(hat, sp.holo_symbol(m));
                kernels::parallel::axpy(r.coeff(J | bit, K), deriv.values(), static_cast<double>(sign));
            } else {
                // dz̄^m ∧ dz^J ∧ dz̄^K: pass the p holomorphic factors, then insert into K.
                sign = (((a.p() + popcount(K & below)) & 1) != 0) ? -1 : 1;
                deriv = sp.apply(hat, sp.antiholo_symbol(m));
                kernels::parallel::axpy(r.coeff(J, K | bit), deriv.values(), static_cast<double>(sign));
            }
        }
    }
    return r;
}

}  // namespace

FormPQ d_form_holo(const FormPQ& a) { return d_form(a, true); }
FormPQ d_form_antiholo(const FormPQ& a) { return d_form(a, false); }

double sigma2_convention_constant(int n) {
    const FormPQ w2 = omega_power(n, 2, 1);
    const FormPQ top = wedge(w2, omega_power(n, n - 2, 1));
    const double c_n2 = n * (n - 1) / 2.0;
    const double sigma2_identity = n * (n - 1) / 2.0;
    return c_n2 * top_ratio(top)[0].real() / sigma2_identity;
}

}  // namespace fuyau
