#include "fuyau/monitor.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include "fuyau/kernels.hpp"
#include "fuyau/spectral.hpp"

namespace fuyau {

double rho_c0_norm(const HermitianField& rho) {
    double m = 0.0;
    for (std::size_t k = 0; k < rho.grid().node_count(); ++k) {
        const auto ev = eigenvalues(rho.matrix_at(k));
        m = std::max({m, std::abs(ev.front()), std::abs(ev.back())});
    }
    return m;
}

double delta0_bound(double alpha, double rho_c0) { return std::sqrt(1.0 / (2.0 * std::abs(alpha) * rho_c0 + 1.0)); }

EstimateReport report(const State& s, const ProblemData& d) {
    const GridSpec& g = d.grid;
    const int n = g.n;
    EstimateReport r;
    const ScalarField em = exp(-1.0 * s.phi);
    r.inf_exp_neg_phi = inf(em);
    r.sup_exp_neg_phi = sup(em);
    r.M0_emp = std::max(d.A * std::exp(sup(s.phi)), 1.0 / (d.A * std::exp(inf(s.phi))));
    r.rho_c0 = rho_c0_norm(d.rho);
    r.delta0 = delta0_bound(d.alpha, r.rho_c0);
    r.delta0_ok = r.sup_exp_neg_phi <= r.delta0;
    r.sup_exp_neg_phi_over_A = r.sup_exp_neg_phi / d.A;

    const CovectorField dphi = d_holo(s.phi);
    std::vector<double> g2(g.node_count(), 0.0);
    for (int j = 0; j < n; ++j) {
        const auto c = dphi[j].values();
        for (std::size_t k = 0; k < g2.size(); ++k) g2[k] += std::norm(c[k]);
    }
    r.grad_sq_sup = kernels::parallel::max(g2);

    const HermitianField hess = dd_bar(s.phi);
    std::vector<double> fro(g.node_count(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const auto c = hess(i, j).values();
            for (std::size_t k = 0; k < fro.size(); ++k) fro[k] += std::norm(c[k]);
        }
    for (auto& v : fro) v = std::sqrt(v);
    r.hess_sup = kernels::parallel::max(fro);

    const HermitianField w = omega_tilde(s, d);
    const auto sig = sigma12(w);
    r.sigma2_min = inf(sig.sigma2);
    r.sigma2_max = sup(sig.sigma2);
    r.cone.sigma1 = inf(sig.sigma1);
    r.cone.sigma2 = r.sigma2_min;
    r.cone.inside = r.cone.sigma1 > 0.0 && r.cone.sigma2 > 0.0;

    const double c2 = 0.5 * n * (n - 1);
    const auto s2 = sig.sigma2.values();
    const auto ph = s.phi.values();
    double nd = 0.0;
    for (std::size_t k = 0; k < s2.size(); ++k) {
        nd = std::max(nd, std::abs(s2[k] - c2 * std::exp(2.0 * ph[k])) * std::exp(-ph[k]));
    }
    r.nondeg_ratio = nd;

    const ScalarField f = f_term(s, d);
    const auto fv = f.values();
    const auto ev = em.values();
    double gr = 0.0;
    for (std::size_t k = 0; k < fv.size(); ++k) {
        const double denom = ev[k] * ev[k] + ev[k] * 4.0 * g2[k] + 1.0;
        gr = std::max(gr, std::abs(fv[k]) / denom);
    }
    r.f_growth_ratio = gr;
    return r;
}

void summarize_study(StudySummary& s) {
    double m0_lo = std::numeric_limits<double>::infinity(), m0_hi = 0.0;
    double nd_lo = std::numeric_limits<double>::infinity(), nd_hi = 0.0;
    int ok = 0;
    for (const auto& row : s.rows) {
        if (!row.converged) continue;
        ++ok;
        m0_lo = std::min(m0_lo, row.report.M0_emp);
        m0_hi = std::max(m0_hi, row.report.M0_emp);
        nd_lo = std::min(nd_lo, row.report.nondeg_ratio);
        nd_hi = std::max(nd_hi, row.report.nondeg_ratio);
    }
    s.all_converged = !s.rows.empty() && ok == static_cast<int>(s.rows.size());
    if (ok >= 2) {
        s.M0_spread = m0_lo > 0.0 ? m0_hi / m0_lo : std::numeric_limits<double>::infinity();
        // Both zero (trivial data) counts as no variation.
        s.nondeg_spread = nd_hi == 0.0 ? 1.0 : (nd_lo > 0.0 ? nd_hi / nd_lo : std::numeric_limits<double>::infinity());
    } else {
        s.M0_spread = 0.0;
        s.nondeg_spread = 0.0;
    }
    s.M0_within_factor2 = ok >= 2 && s.M0_spread <= 2.0;
    s.nondeg_within_factor2 = ok >= 2 && s.nondeg_spread <= 2.0;
}

std::vector<std::string> report_csv_header() {
    return {"inf_exp_neg_phi", "sup_exp_neg_phi", "M0_emp",     "delta0",       "delta0_ok",
            "grad_sq_sup",     "hess_sup",        "nondeg_ratio", "sigma2_min", "sigma2_max",
            "sigma1_min",      "cone_sigma2_min", "inside",     "f_growth_ratio", "sup_exp_neg_phi_over_A"};
}

std::vector<std::string> report_csv_values(const EstimateReport& r) {
    auto f = [](double v) {
        std::ostringstream o;
        o << std::setprecision(17) << v;
        return o.str();
    };
    return {f(r.inf_exp_neg_phi), f(r.sup_exp_neg_phi), f(r.M0_emp), f(r.delta0), r.delta0_ok ? "1" : "0",
            f(r.grad_sq_sup), f(r.hess_sup), f(r.nondeg_ratio), f(r.sigma2_min), f(r.sigma2_max),
            f(r.cone.sigma1), f(r.cone.sigma2), r.cone.inside ? "1" : "0", f(r.f_growth_ratio),
            f(r.sup_exp_neg_phi_over_A)};
}

void write_study_csv(std::ostream& os, const StudySummary& s) {
    os << "A,converged,steps,residual_linf,uniqueness_diff";
    for (const auto& h : report_csv_header()) os << ',' << h;
    os << '\n';
    for (const auto& row : s.rows) {
        std::ostringstream a;
        a << std::setprecision(17) << row.A << ',' << (row.converged ? 1 : 0) << ',' << row.steps << ','
          << row.residual_linf << ',';
        if (row.uniqueness_diff) a << *row.uniqueness_diff;
        os << a.str();
        for (const auto& v : report_csv_values(row.report)) os << ',' << v;
        os << '\n';
    }
}

nlohmann::ordered_json report_to_json(const EstimateReport& r) {
    nlohmann::ordered_json j;
    j["inf_exp_neg_phi"] = r.inf_exp_neg_phi;
    j["sup_exp_neg_phi"] = r.sup_exp_neg_phi;
    j["M0_emp"] = r.M0_emp;
    j["delta0"] = r.delta0;
    j["delta0_ok"] = r.delta0_ok;
    j["grad_sq_sup"] = r.grad_sq_sup;
    j["hess_sup"] = r.hess_sup;
    j["hess_norm"] = "frobenius";
    j["nondeg_ratio"] = r.nondeg_ratio;
    j["sigma2_range"] = {r.sigma2_min, r.sigma2_max};
    j["cone_margins"] = {r.cone.sigma1, r.cone.sigma2};
    j["f_growth_ratio"] = r.f_growth_ratio;
    j["sup_exp_neg_phi_over_A"] = r.sup_exp_neg_phi_over_A;
    j["rho_c0"] = r.rho_c0;
    j["rho_norm"] = "operator";
    return j;
}

}  // namespace fuyau
