#include "fuyau/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fuyau/errors.hpp"
#include "fuyau/kernels.hpp"

namespace fuyau {

namespace kp = kernels::parallel;

void GridSpec::validate() const {
    if (n < 2 || n > 3) throw std::invalid_argument("GridSpec: n must be 2 or 3, got " + std::to_string(n));
    if (N < 4 || (N & (N - 1)) != 0) {
        throw std::invalid_argument("GridSpec: N must be a power of two >= 4, got " + std::to_string(N));
    }
    if (!(period > 0.0) || !std::isfinite(period)) throw std::invalid_argument("GridSpec: period must be positive");
}

std::size_t GridSpec::node_count() const {
    std::size_t m = 1;
    for (int a = 0; a < axes(); ++a) m *= static_cast<std::size_t>(N);
    return m;
}

double GridSpec::volume() const { return std::pow(period, axes()); }

double GridSpec::cell_volume() const { return volume() / static_cast<double>(node_count()); }

int GridSpec::index(std::size_t node, int axis) const {
    std::size_t stride = 1;
    for (int a = axes() - 1; a > axis; --a) stride *= static_cast<std::size_t>(N);
    return static_cast<int>((node / stride) % static_cast<std::size_t>(N));
}

double GridSpec::coord(std::size_t node, int axis) const {
    return period * static_cast<double>(index(node, axis)) / static_cast<double>(N);
}

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (a != b) throw GridMismatch(std::string(where) + ": fields live on different grids");
}

// ---- ScalarField ------------------------------------------------------------

ScalarField::ScalarField(GridSpec grid, std::vector<double> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count()) throw std::invalid_argument("ScalarField: size does not match grid");
    for (double v : values_) {
        if (!std::isfinite(v)) throw std::domain_error("ScalarField: non-finite value");
    }
}

ScalarField ScalarField::constant(const GridSpec& grid, double c) {
    return ScalarField(grid, std::vector<double>(grid.node_count(), c));
}

ScalarField ScalarField::from_function(const GridSpec& grid,
                                       const std::function<double(std::span<const double>)>& f) {
    const std::size_t m = grid.node_count();
    std::vector<double> v(m);
    std::vector<double> x(static_cast<std::size_t>(grid.axes()));
    for (std::size_t k = 0; k < m; ++k) {
        for (int a = 0; a < grid.axes(); ++a) x[static_cast<std::size_t>(a)] = grid.coord(k, a);
        v[k] = f(x);
    }
    return ScalarField(grid, std::move(v));
}

// ---- ComplexField -----------------------------------------------------------

ComplexField::ComplexField(GridSpec grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.node_count()) throw std::invalid_argument("ComplexField: size does not match grid");
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw std::domain_error("ComplexField: non-finite value");
        }
    }
}

ComplexField ComplexField::constant(const GridSpec& grid, cplx c) {
    return ComplexField(grid, std::vector<cplx>(grid.node_count(), c));
}

ComplexField ComplexField::from_real(const ScalarField& f) {
    std::vector<cplx> v(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) v[k] = f[k];
    return ComplexField(f.grid(), std::move(v));
}

ScalarField ComplexField::real() const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k].real();
    return ScalarField(grid_, std::move(v));
}

ScalarField ComplexField::imag() const {
    std::vector<double> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = values_[k].imag();
    return ScalarField(grid_, std::move(v));
}

ComplexField ComplexField::conj() const {
    std::vector<cplx> v(values_.size());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::conj(values_[k]);
    return ComplexField(grid_, std::move(v));
}

double ComplexField::max_abs() const {
    double m = 0.0;
    for (const cplx& v : values_) m = std::max(m, std::abs(v));
    return m;
}

double ComplexField::max_abs_imag() const {
    double m = 0.0;
    for (const cplx& v : values_) m = std::max(m, std::abs(v.imag()));
    return m;
}

// ---- CovectorField ----------------------------------------------------------

CovectorField::CovectorField(std::vector<ComplexField> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("CovectorField: no components");
    for (const auto& c : components_) require_same_grid(c.grid(), components_.front().grid(), "CovectorField");
}

CovectorField CovectorField::conj() const {
    std::vector<ComplexField> c;
    c.reserve(components_.size());
    for (const auto& comp : components_) c.push_back(comp.conj());
    return CovectorField(std::move(c));
}

// ---- HermitianField ---------------------------------------------------------

HermitianField HermitianField::from_upper(const GridSpec& grid, std::vector<ComplexField> upper) {
    const int n = grid.n;
    if (upper.size() != static_cast<std::size_t>(n * (n + 1) / 2)) {
        throw std::invalid_argument("HermitianField::from_upper: expected n(n+1)/2 entries");
    }
    HermitianField h;
    h.grid_ = grid;
    h.entries_.resize(static_cast<std::size_t>(n * n));
    std::size_t u = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j, ++u) {
            require_same_grid(upper[u].grid(), grid, "HermitianField::from_upper");
            if (i == j) {
                std::vector<cplx> d(grid.node_count());
                const auto src = upper[u].values();
                for (std::size_t k = 0; k < d.size(); ++k) d[k] = src[k].real();
                h.entries_[static_cast<std::size_t>(i * n + i)] = ComplexField(grid, std::move(d));
            } else {
                h.entries_[static_cast<std::size_t>(j * n + i)] = upper[u].conj();
                h.entries_[static_cast<std::size_t>(i * n + j)] = std::move(upper[u]);
            }
        }
    }
    return h;
}

HermitianField HermitianField::from_full(const GridSpec& grid, std::vector<ComplexField> entries) {
    const int n = grid.n;
    if (entries.size() != static_cast<std::size_t>(n * n)) {
        throw std::invalid_argument("HermitianField::from_full: expected n^2 entries");
    }
    double scale = 0.0;
    for (const auto& e : entries) scale = std::max(scale, e.max_abs());
    double asym = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            const auto a = entries[static_cast<std::size_t>(i * n + j)].values();
            const auto b = entries[static_cast<std::size_t>(j * n + i)].values();
            for (std::size_t k = 0; k < a.size(); ++k) asym = std::max(asym, std::abs(a[k] - std::conj(b[k])));
        }
    }
    if (asym > 1e-13 * std::max(scale, 1.0)) {
        throw std::invalid_argument("HermitianField::from_full: input is not Hermitian (asymmetry " +
                                    std::to_string(asym) + ")");
    }
    std::vector<ComplexField> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) upper.push_back(std::move(entries[static_cast<std::size_t>(i * n + j)]));
    return from_upper(grid, std::move(upper));
}

HermitianField HermitianField::constant(const GridSpec& grid, const HermMat& m) {
    if (m.n != grid.n) throw std::invalid_argument("HermitianField::constant: dimension mismatch");
    if (m.asymmetry() > 1e-13 * std::max(1.0, m.norm())) {
        throw std::invalid_argument("HermitianField::constant: matrix is not Hermitian");
    }
    std::vector<ComplexField> upper;
    for (int i = 0; i < grid.n; ++i)
        for (int j = i; j < grid.n; ++j) upper.push_back(ComplexField::constant(grid, m(i, j)));
    return from_upper(grid, std::move(upper));
}

HermitianField HermitianField::scalar_identity(const ScalarField& s) {
    const GridSpec& grid = s.grid();
    std::vector<ComplexField> upper;
    for (int i = 0; i < grid.n; ++i)
        for (int j = i; j < grid.n; ++j)
            upper.push_back(i == j ? ComplexField::from_real(s) : ComplexField::constant(grid, 0.0));
    return from_upper(grid, std::move(upper));
}

HermitianField HermitianField::zero(const GridSpec& grid) { return constant(grid, HermMat(grid.n)); }

HermMat HermitianField::matrix_at(std::size_t node) const {
    HermMat m(grid_.n);
    for (int i = 0; i < grid_.n; ++i)
        for (int j = 0; j < grid_.n; ++j) m(i, j) = (*this)(i, j)[node];
    return m;
}

std::vector<const cplx*> HermitianField::entry_pointers() const {
    std::vector<const cplx*> p;
    p.reserve(entries_.size());
    for (const auto& e : entries_) p.push_back(e.values().data());
    return p;
}

ScalarField HermitianField::trace() const {
    std::vector<double> t(grid_.node_count(), 0.0);
    for (int i = 0; i < grid_.n; ++i) {
        const auto d = (*this)(i, i).values();
        for (std::size_t k = 0; k < t.size(); ++k) t[k] += d[k].real();
    }
    return ScalarField(grid_, std::move(t));
}

HermitianField HermitianField::scaled(const ScalarField& w) const {
    require_same_grid(grid_, w.grid(), "HermitianField::scaled");
    std::vector<ComplexField> upper;
    for (int i = 0; i < grid_.n; ++i)
        for (int j = i; j < grid_.n; ++j) upper.push_back(w * (*this)(i, j));
    return from_upper(grid_, std::move(upper));
}

HermitianField HermitianField::scaled(double w) const {
    std::vector<ComplexField> upper;
    for (int i = 0; i < grid_.n; ++i)
        for (int j = i; j < grid_.n; ++j) upper.push_back(cplx(w) * (*this)(i, j));
    return from_upper(grid_, std::move(upper));
}

HermitianField HermitianField::operator+(const HermitianField& o) const {
    require_same_grid(grid_, o.grid_, "HermitianField::operator+");
    std::vector<ComplexField> upper;
    for (int i = 0; i < grid_.n; ++i)
        for (int j = i; j < grid_.n; ++j) upper.push_back((*this)(i, j) + o(i, j));
    return from_upper(grid_, std::move(upper));
}

// ---- pointwise arithmetic ---------------------------------------------------

namespace {

template <typename Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op, const char* where) {
    require_same_grid(a.grid(), b.grid(), where);
    std::vector<double> v(a.size());
    const auto av = a.values();
    const auto bv = b.values();
    const auto size = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < size; ++k) v[k] = op(av[k], bv[k]);
    return ScalarField(a.grid(), std::move(v));
}

template <typename Op>
ComplexField zipc(const ComplexField& a, const ComplexField& b, Op op, const char* where) {
    require_same_grid(a.grid(), b.grid(), where);
    std::vector<cplx> v(a.size());
    const auto av = a.values();
    const auto bv = b.values();
    const auto size = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < size; ++k) v[k] = op(av[k], bv[k]);
    return ComplexField(a.grid(), std::move(v));
}

}  // namespace

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x + y; }, "operator+");
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x - y; }, "operator-");
}
ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    return zip(a, b, [](double x, double y) { return x * y; }, "operator*");
}
ScalarField operator*(double s, const ScalarField& a) {
    return map(a, [s](double x) { return s * x; });
}
ScalarField operator+(const ScalarField& a, double c) {
    return map(a, [c](double x) { return x + c; });
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& f) {
    std::vector<double> v(a.size());
    const auto av = a.values();
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = f(av[k]);
    return ScalarField(a.grid(), std::move(v));
}

ScalarField exp(const ScalarField& a) {
    std::vector<double> v(a.size());
    const auto av = a.values();
    const auto size = static_cast<std::ptrdiff_t>(v.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < size; ++k) v[k] = std::exp(av[k]);
    return ScalarField(a.grid(), std::move(v));
}

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
    return zipc(a, b, [](cplx x, cplx y) { return x + y; }, "operator+");
}
ComplexField operator-(const ComplexField& a, const ComplexField& b) {
    return zipc(a, b, [](cplx x, cplx y) { return x - y; }, "operator-");
}
ComplexField operator*(const ComplexField& a, const ComplexField& b) {
    return zipc(a, b, [](cplx x, cplx y) { return x * y; }, "operator*");
}
ComplexField operator*(cplx s, const ComplexField& a) {
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& x : v) x *= s;
    return ComplexField(a.grid(), std::move(v));
}
ComplexField operator*(const ScalarField& w, const ComplexField& a) {
    require_same_grid(w.grid(), a.grid(), "operator*(ScalarField, ComplexField)");
    std::vector<cplx> v(a.size());
    kp::weight(v, a.values(), w.values());
    return ComplexField(a.grid(), std::move(v));
}

// ---- integrals and norms ----------------------------------------------------

double mean(const ScalarField& f) { return kp::sum(f.values()) / static_cast<double>(f.size()); }

double integral(const ScalarField& f) { return kp::sum(f.values()) * f.grid().cell_volume(); }

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    std::vector<double> a(f.size());
    const auto v = f.values();
    for (std::size_t k = 0; k < a.size(); ++k) a[k] = p == 1.0 ? std::abs(v[k]) : std::pow(std::abs(v[k]), p);
    const double s = kp::sum(a) * f.grid().cell_volume();
    return p == 1.0 ? s : std::pow(s, 1.0 / p);
}

double sup(const ScalarField& f) { return kp::max(f.values()); }
double inf(const ScalarField& f) { return kp::min(f.values()); }

double sup_abs(const ScalarField& f) {
    return std::max(std::abs(kp::max(f.values())), std::abs(kp::min(f.values())));
}

double inner(const ScalarField& f, const ScalarField& g) {
    require_same_grid(f.grid(), g.grid(), "inner");
    return kp::dot(f.values(), g.values()) * f.grid().cell_volume();
}

}  // namespace fuyau
