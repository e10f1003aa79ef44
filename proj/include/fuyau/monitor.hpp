#pragma once

// Empirical counterparts of the a priori bounds, evaluated on a grid state.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fuyau/assembly.hpp"
#include "fuyau/hessian.hpp"

namespace fuyau {

struct EstimateReport {
    double inf_exp_neg_phi = 0.0;
    double sup_exp_neg_phi = 0.0;
    /// max(A·e^{sup φ}, 1/(A·e^{inf φ}))
    double M0_emp = 0.0;
    /// (2|α|‖ρ‖ + 1)^{−1/2}, ‖ρ‖ the max over nodes of the operator norm
    double delta0 = 0.0;
    bool delta0_ok = false;
    /// sup Σ_j |∂_j φ|²
    double grad_sq_sup = 0.0;
    /// sup Frobenius norm of ∂∂̄φ
    double hess_sup = 0.0;
    /// sup |σ₂(ω̃) − C(n,2)e^{2φ}|·e^{−φ}
    double nondeg_ratio = 0.0;
    double sigma2_min = 0.0;
    double sigma2_max = 0.0;
    ConeMargin cone;
    /// sup |f| / (e^{−2φ} + e^{−φ}|∇φ|² + 1), |∇φ|² the real gradient = 4|∂φ|²
    double f_growth_ratio = 0.0;
    /// sup e^{−φ} / A
    double sup_exp_neg_phi_over_A = 0.0;
    double rho_c0 = 0.0;
};

/// ‖ρ‖_{C⁰}: max over nodes of the largest absolute eigenvalue.
double rho_c0_norm(const HermitianField& rho);
double delta0_bound(double alpha, double rho_c0);

EstimateReport report(const State& s, const ProblemData& d);
nlohmann::ordered_json report_to_json(const EstimateReport& r);

struct StudyRow {
    double A = 0.0;
    bool converged = false;
    std::string message;
    EstimateReport report;
    double residual_linf = 0.0;
    int steps = 0;
    /// sup|φ₁ − φ₁′| of the reverse-direction cross-check, when it was run.
    std::optional<double> uniqueness_diff;
};

struct StudySummary {
    std::vector<StudyRow> rows;
    /// max/min over converged rows; 0 when fewer than two rows converged.
    double M0_spread = 0.0;
    double nondeg_spread = 0.0;
    bool all_converged = false;
    bool M0_within_factor2 = false;
    bool nondeg_within_factor2 = false;
};

/// Fills the spread fields and pass flags from the rows.
void summarize_study(StudySummary& s);

void write_study_csv(std::ostream& os, const StudySummary& s);
std::vector<std::string> report_csv_header();
std::vector<std::string> report_csv_values(const EstimateReport& r);

}  // namespace fuyau
