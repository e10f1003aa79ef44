#include "fuyau/trig.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

namespace fuyau {

double TrigPolynomial::eval(std::span<const double> coords, double period) const {
    double s = constant;
    const double w = 2.0 * std::numbers::pi / period;
    for (const auto& t : terms) {
        double p = t.amp;
        for (const auto& f : t.factors) {
            const double arg = w * f.k * coords[static_cast<std::size_t>(f.axis)];
            p *= f.fn == TrigFn::Sin ? std::sin(arg) : std::cos(arg);
        }
        s += p;
    }
    return s;
}

ScalarField TrigPolynomial::sample(const GridSpec& grid) const {
    for (const auto& t : terms)
        for (const auto& f : t.factors)
            if (f.axis < 0 || f.axis >= grid.axes())
                throw std::invalid_argument("TrigPolynomial: axis out of range for grid");
    return ScalarField::from_function(grid, [&](std::span<const double> c) { return eval(c, grid.period); });
}

int TrigPolynomial::degree() const {
    int d = 0;
    for (const auto& t : terms)
        for (const auto& f : t.factors) d = std::max(d, std::abs(f.k));
    return d;
}

double TrigPolynomial::exact_mean() const {
    // Each factor integrates independently only when axes are distinct; repeated
    // axes are folded by product-to-sum, handled here by direct quadrature on a
    // 1-D grid fine enough to be exact for the combined degree.
    double m = constant;
    for (const auto& t : terms) {
        std::vector<std::vector<const TrigFactor*>> by_axis;
        int max_axis = -1;
        for (const auto& f : t.factors) max_axis = std::max(max_axis, f.axis);
        by_axis.resize(static_cast<std::size_t>(max_axis + 1));
        for (const auto& f : t.factors) by_axis[static_cast<std::size_t>(f.axis)].push_back(&f);
        double p = t.amp;
        for (const auto& group : by_axis) {
            if (group.empty()) continue;
            int deg = 0;
            for (const auto* f : group) deg += std::abs(f->k);
            const int q = 2 * deg + 2;
            double avg = 0.0;
            for (int i = 0; i < q; ++i) {
                const double x = 2.0 * std::numbers::pi * i / q;
                double v = 1.0;
                for (const auto* f : group) v *= f->fn == TrigFn::Sin ? std::sin(f->k * x) : std::cos(f->k * x);
                avg += v;
            }
            p *= avg / q;
        }
        m += p;
    }
    return m;
}

TrigPolynomial random_trig(int n, int max_k, int terms, double amp, std::mt19937_64& rng, int max_factors) {
    std::uniform_int_distribution<int> kdist(1, std::max(1, max_k));
    std::uniform_int_distribution<int> ksign(0, 1);
    std::uniform_int_distribution<int> nf(1, std::max(1, max_factors));
    std::uniform_int_distribution<int> fn(0, 1);
    std::uniform_real_distribution<double> a(-amp, amp);
    TrigPolynomial p;
    for (int t = 0; t < terms; ++t) {
        TrigTerm term;
        term.amp = a(rng);
        const int count = std::min(nf(rng), 2 * n);
        // Distinct axes per term keep the per-axis degree at most max_k.
        std::vector<int> axes(static_cast<std::size_t>(2 * n));
        for (int i = 0; i < 2 * n; ++i) axes[static_cast<std::size_t>(i)] = i;
        for (int f = 0; f < count; ++f) {
            std::uniform_int_distribution<int> pick(f, 2 * n - 1);
            std::swap(axes[static_cast<std::size_t>(f)], axes[static_cast<std::size_t>(pick(rng))]);
            const int k = ksign(rng) == 0 ? kdist(rng) : -kdist(rng);
            term.factors.push_back({axes[static_cast<std::size_t>(f)], k, fn(rng) == 0 ? TrigFn::Sin : TrigFn::Cos});
        }
        p.terms.push_back(std::move(term));
    }
    return p;
}

TrigFn trig_fn_from_string(const std::string& s) {
    if (s == "sin") return TrigFn::Sin;
    if (s == "cos") return TrigFn::Cos;
    throw std::invalid_argument("unknown trig function '" + s + "' (expected sin or cos)");
}

std::string to_string(TrigFn fn) { return fn == TrigFn::Sin ? "sin" : "cos"; }

}  // namespace fuyau
