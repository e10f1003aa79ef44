#include <gtest/gtest.h>

#include <sstream>

#include "fuyau/monitor.hpp"
#include "support.hpp"

using namespace fuyau;

TEST(Monitor, ReportAtTrivialState) {
    const GridSpec g{2, 8, 1.0};
    const ProblemData d{g, 0.05, 0.5, HermitianField::zero(g), ScalarField::constant(g, 0.0)};
    const EstimateReport r = report(State{ScalarField::constant(g, -std::log(0.5)), 1.0}, d);
    EXPECT_NEAR(r.M0_emp, 1.0, 1e-14);
    EXPECT_NEAR(r.nondeg_ratio, 0.0, 1e-13);
    EXPECT_NEAR(r.grad_sq_sup, 0.0, 1e-20);
    EXPECT_NEAR(r.sup_exp_neg_phi, 0.5, 1e-15);
    EXPECT_NEAR(r.sup_exp_neg_phi_over_A, 1.0, 1e-14);
    EXPECT_DOUBLE_EQ(r.delta0, 1.0);
    EXPECT_TRUE(r.delta0_ok);
    EXPECT_TRUE(r.cone.inside);
    EXPECT_NEAR(r.sigma2_min, 4.0, 1e-13);
}

TEST(Monitor, RhoNormIsOperatorNorm) {
    const GridSpec g{2, 4, 1.0};
    HermMat m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -2.0;
    EXPECT_NEAR(rho_c0_norm(HermitianField::constant(g, m)), 2.0, 1e-14);
    HermMat off(2);
    off(0, 1) = cplx(0.0, 3.0);
    off(1, 0) = cplx(0.0, -3.0);
    EXPECT_NEAR(rho_c0_norm(HermitianField::constant(g, off)), 3.0, 1e-14);
    EXPECT_NEAR(delta0_bound(0.05, 2.0), 1.0 / std::sqrt(1.2), 1e-15);
}

TEST(Monitor, ManufacturedReportIsConsistent) {
    const auto m = support::manufactured(2, 16, 0.05);
    const EstimateReport r = report(State{m.phi_star, 1.0}, m.data);
    EXPECT_NEAR(r.inf_exp_neg_phi, std::exp(-2.3), 1e-3);
    EXPECT_GT(r.hess_sup, 0.0);
    EXPECT_GT(r.grad_sq_sup, 0.0);
    EXPECT_TRUE(std::isfinite(r.f_growth_ratio));
    EXPECT_GT(r.M0_emp, 1.0);
    EXPECT_TRUE(r.cone.inside);
    EXPECT_LE(r.sigma2_min, r.sigma2_max);
}

TEST(Monitor, StudySummaryAndCsv) {
    StudySummary s;
    for (double A : {0.2, 0.1, 0.05}) {
        StudyRow row;
        row.A = A;
        row.converged = true;
        row.report.M0_emp = 1.0 + A;
        row.report.nondeg_ratio = A;
        s.rows.push_back(row);
    }
    summarize_study(s);
    EXPECT_TRUE(s.all_converged);
    EXPECT_NEAR(s.M0_spread, 1.2 / 1.05, 1e-14);
    EXPECT_NEAR(s.nondeg_spread, 4.0, 1e-14);
    EXPECT_TRUE(s.M0_within_factor2);
    EXPECT_FALSE(s.nondeg_within_factor2);

    s.rows[1].converged = false;
    summarize_study(s);
    EXPECT_FALSE(s.all_converged);
    EXPECT_NEAR(s.nondeg_spread, 4.0, 1e-14);

    std::ostringstream os;
    write_study_csv(os, s);
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("A,converged,steps,residual_linf,uniqueness_diff", 0), 0u);
    const auto cols = std::count(line.begin(), line.end(), ',');
    int rows = 0;
    while (std::getline(in, line)) {
        EXPECT_EQ(std::count(line.begin(), line.end(), ','), cols);
        ++rows;
    }
    EXPECT_EQ(rows, 3);
    EXPECT_EQ(report_csv_header().size(), report_csv_values(EstimateReport{}).size());
}
