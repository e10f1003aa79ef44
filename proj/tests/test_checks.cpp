#include <gtest/gtest.h>

#include <sstream>

#include "fuyau/checks.hpp"

using namespace fuyau;

TEST(Checks, FullSuitePassesAndPrintsOneLineEach) {
    std::ostringstream out;
    const auto results = run_checks(CheckOptions{}, out);
    EXPECT_EQ(results.size(), check_names().size());
    for (const auto& r : results) EXPECT_TRUE(r.passed) << r.name << ": " << r.detail;
    std::istringstream in(out.str());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(in, line)) {
        EXPECT_TRUE(line.rfind("PASS ", 0) == 0 || line.rfind("FAIL ", 0) == 0) << line;
        ++lines;
    }
    EXPECT_EQ(lines, results.size());
}

TEST(Checks, CorruptedConstantFailsEquivalence) {
    std::ostringstream out;
    CheckOptions opt;
    opt.filter = "assembly.equivalence";
    opt.kappa_scale = 1.0 + 1e-6;
    const auto results = run_checks(opt, out);
    ASSERT_EQ(results.size(), 1u);
    EXPECT_FALSE(results[0].passed);
    EXPECT_NE(results[0].detail.find("n=2"), std::string::npos);
    EXPECT_NE(results[0].detail.find("n=3"), std::string::npos);
}

TEST(Checks, FilterSelectsBySubstring) {
    std::ostringstream out;
    CheckOptions opt;
    opt.filter = "hessian.";
    const auto results = run_checks(opt, out);
    EXPECT_EQ(results.size(), 4u);
    opt.filter = "no-such-check";
    EXPECT_TRUE(run_checks(opt, out).empty());
}
