#pragma once

// Run configuration (JSON, schema "fuyau-config/1") and its translation into
// ProblemData and solver controls.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fuyau/assembly.hpp"
#include "fuyau/continuation.hpp"
#include "fuyau/trig.hpp"

namespace fuyau {

inline constexpr const char* kConfigSchema = "fuyau-config/1";

struct DiagonalTrigRho {
    double base = 0.0;
    std::vector<double> amplitudes;              ///< one per complex direction
    std::vector<std::vector<int>> wave_vectors;  ///< one 2n-vector per direction
    bool operator==(const DiagonalTrigRho&) const = default;
};

struct FourierRhoTerm {
    std::vector<int> k;                                ///< 2n integer wave vector
    std::vector<std::vector<std::array<double, 2>>> coeff;  ///< n×n complex (re, im)
    bool operator==(const FourierRhoTerm&) const = default;
};

struct RhoSpec {
    std::string family = "scaled_identity";  ///< scaled_identity | diagonal_trig | fourier
    double c = 0.0;                          ///< scaled_identity, and the identity base of fourier
    DiagonalTrigRho diagonal;
    std::vector<FourierRhoTerm> fourier;
    bool operator==(const RhoSpec&) const = default;
};

struct MuSpec {
    std::string family = "zero";  ///< zero | trig_poly | manufactured
    TrigPolynomial poly;           ///< trig_poly terms, or the manufactured φ*
    bool operator==(const MuSpec&) const = default;
};

struct ProblemConfig {
    int n = 2;
    int N = 16;
    double period = 1.0;
    double alpha = 0.05;
    std::optional<double> A;  ///< empty means "from_manufactured"
    RhoSpec rho;
    MuSpec mu;
    bool operator==(const ProblemConfig&) const = default;
};

struct SolverConfig {
    double tol_newton = 1e-10;
    double tol_lin = 1e-12;
    int max_newton = 30;
    int max_halvings = 20;
    int gmres_restart = 40;
    int gmres_max_iterations = 600;
    bool probe_kernel = true;
    double dt0 = 0.1;
    double dt_min = 1e-4;
    double dt_max = 0.5;
    int easy_iterations = 3;
    std::string direction = "forward";  ///< forward | reverse
    bool check_delta0 = true;
    bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
    std::string dir = "fuyau_out";
    bool trace = true;
    bool dump_field = true;
    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    ProblemConfig problem;
    SolverConfig solver;
    OutputConfig output;
    std::uint64_t seed = 1;
    bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError on schema violations.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

/// output.dir, overridden by the FUYAU_OUTPUT_DIR environment variable.
std::string output_dir(const RunConfig& c);

struct BuiltProblem {
    ProblemData data;
    /// |mean(μ)| removed from a trig_poly μ (0 for other families).
    double mu_mean_correction = 0.0;
    /// The manufactured φ*, when the μ family is "manufactured".
    std::optional<ScalarField> phi_star;
};

BuiltProblem build_problem(const ProblemConfig& p);
ContinuationOptions continuation_options(const SolverConfig& s);

}  // namespace fuyau
