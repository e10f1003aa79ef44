#pragma once

// Separable trigonometric polynomials on the torus, used for config-specified
// data (μ families, manufactured φ) and for seeded random test fields.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fuyau/grid.hpp"

namespace fuyau {

enum class TrigFn { Sin, Cos };

struct TrigFactor {
    int axis = 0;  ///< real axis 0..2n−1 in (x1, y1, x2, y2, ...) order
    int k = 1;     ///< integer wavenumber, argument is 2πk·x/period
    TrigFn fn = TrigFn::Cos;
    bool operator==(const TrigFactor&) const = default;
};

/// amp · Π_f fn_f(2π k_f x_{axis_f} / period)
struct TrigTerm {
    double amp = 0.0;
    std::vector<TrigFactor> factors;
    bool operator==(const TrigTerm&) const = default;
};

struct TrigPolynomial {
    double constant = 0.0;
    std::vector<TrigTerm> terms;

    double eval(std::span<const double> coords, double period) const;
    ScalarField sample(const GridSpec& grid) const;
    /// Largest |k| among all factors.
    int degree() const;
    bool operator==(const TrigPolynomial&) const = default;
    /// Exact mean over the torus (only the constant and all-cos k=0 terms survive).
    double exact_mean() const;
};

/// Seeded random polynomial with `terms` terms, nonzero wavenumbers with |k| ≤ max_k,
/// amplitudes uniform in [−amp, amp], up to `max_factors` factors per term.
TrigPolynomial random_trig(int n, int max_k, int terms, double amp, std::mt19937_64& rng,
                           int max_factors = 2);

TrigFn trig_fn_from_string(const std::string& s);
std::string to_string(TrigFn fn);

}  // namespace fuyau
