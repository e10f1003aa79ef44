#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "fuyau/continuation.hpp"
#include "fuyau/spectral.hpp"
#include "support.hpp"

using namespace fuyau;

TEST(Continuation, TrivialDataStaysAtConstant) {
    const GridSpec g{2, 8, 1.0};
    const ProblemData d{g, 0.05, 0.4, HermitianField::zero(g), ScalarField::constant(g, 0.0)};
    const ContinuityTrace tr = continuity_run(d, ContinuationOptions{});
    ASSERT_TRUE(tr.success) << tr.message;
    EXPECT_DOUBLE_EQ(tr.last_good_t, 1.0);
    EXPECT_DOUBLE_EQ(tr.records.back().t, 1.0);
    EXPECT_LE(sup_abs(tr.final_state.phi + std::log(0.4)), 1e-12);
    for (std::size_t i = 1; i < tr.records.size(); ++i) EXPECT_GT(tr.records[i].t, tr.records[i - 1].t);
}

TEST(Continuation, ManufacturedForwardAndReverse) {
    const auto m = support::manufactured(2, 8, 0.05);
    const ContinuityTrace fwd = continuity_run(m.data, ContinuationOptions{});
    ASSERT_TRUE(fwd.success) << fwd.message;
    EXPECT_LE(sup_abs(fwd.final_state.phi - project_resolved(m.phi_star)), 1e-8);
    for (const auto& r : fwd.records) {
        EXPECT_GT(r.report.cone.sigma1, 0.0);
        EXPECT_GT(r.report.cone.sigma2, 0.0);
    }

    ContinuationOptions rev;
    rev.reverse = true;
    rev.check_delta0 = false;
    const ContinuityTrace back = continuity_run(m.data, rev, State{fwd.final_state.phi, 1.0});
    ASSERT_TRUE(back.success) << back.message;
    EXPECT_DOUBLE_EQ(back.records.back().t, 0.0);
    EXPECT_LE(sup_abs(back.final_state.phi + std::log(m.data.A)), 1e-9);
}

TEST(Continuation, ReverseNeedsStartState) {
    const auto m = support::manufactured(2, 8, 0.05);
    ContinuationOptions rev;
    rev.reverse = true;
    EXPECT_THROW(continuity_run(m.data, rev), std::invalid_argument);
}

TEST(Continuation, DeltaZeroViolationAbortsBeforeMarching) {
    const GridSpec g{2, 8, 1.0};
    const ProblemData d{g, 0.05, 50.0, HermitianField::constant(g, HermMat::identity(2)), ScalarField::constant(g, 0.0)};
    const ContinuityTrace tr = continuity_run(d, ContinuationOptions{});
    EXPECT_FALSE(tr.success);
    EXPECT_DOUBLE_EQ(tr.last_good_t, 0.0);
    EXPECT_NE(tr.message.find("delta0"), std::string::npos);
}

TEST(Continuation, TraceJsonlSchemaAndDeterminism) {
    const auto m = support::manufactured(2, 8, -0.05);
    const ContinuityTrace a = continuity_run(m.data, ContinuationOptions{});
    const ContinuityTrace b = continuity_run(m.data, ContinuationOptions{});
    std::ostringstream sa, sb;
    write_trace_jsonl(sa, a);
    write_trace_jsonl(sb, b);
    EXPECT_EQ(sa.str(), sb.str());

    std::istringstream in(sa.str());
    std::string line;
    std::size_t count = 0;
    while (std::getline(in, line)) {
        const auto j = nlohmann::json::parse(line);
        for (const char* key : {"t", "newton_iters", "residual_linf", "dt", "report", "cone"}) EXPECT_TRUE(j.contains(key)) << key;
        EXPECT_TRUE(j["cone"].contains("sigma1_min"));
        EXPECT_TRUE(j["cone"].contains("sigma2_min"));
        EXPECT_TRUE(j["report"].contains("M0_emp"));
        EXPECT_TRUE(j["report"].contains("nondeg_ratio"));
        ++count;
    }
    EXPECT_EQ(count, a.records.size());
}

TEST(Continuation, StepSizeFloorEndsRunWithDiagnostic) {
    // Far outside the feasible range: ω̃ leaves the cone long before t = 1.
    const GridSpec g{2, 8, 1.0};
    const auto mu = ScalarField::from_function(g, [](std::span<const double> x) { return 400.0 * std::cos(2 * M_PI * x[0]); });
    const ProblemData d{g, 0.05, 5.0, HermitianField::constant(g, HermMat::identity(2)), mu};
    ContinuationOptions opt;
    opt.check_delta0 = false;
    opt.dt_min = 1e-2;
    const ContinuityTrace tr = continuity_run(d, opt);
    EXPECT_FALSE(tr.success);
    EXPECT_LT(tr.last_good_t, 1.0);
    EXPECT_FALSE(tr.message.empty());
}
