#pragma once

#include <stdexcept>
#include <string>

namespace fuyau {

/// Two fields (or a field and an operator) live on different grids.
class GridMismatch : public std::invalid_argument {
public:
    explicit GridMismatch(const std::string& what) : std::invalid_argument(what) {}
};

/// A √−1 bookkeeping or normalization inconsistency was detected at runtime,
/// e.g. an assembled top-form ratio that should be real carries an imaginary
/// residue, or the residual equivalence fit is not constant.
class ConventionError : public std::runtime_error {
public:
    explicit ConventionError(const std::string& what) : std::runtime_error(what) {}
};

/// A state left (or started outside) the Γ₂ cone.
class ConeExitError : public std::runtime_error {
public:
    explicit ConeExitError(const std::string& what) : std::runtime_error(what) {}
};

/// The linearized operator has more than one independent near-null vector.
class KernelDegeneracyError : public std::runtime_error {
public:
    explicit KernelDegeneracyError(const std::string& what) : std::runtime_error(what) {}
};

/// Iterative linear solve did not reach its tolerance.
class LinearSolveError : public std::runtime_error {
public:
    explicit LinearSolveError(const std::string& what) : std::runtime_error(what) {}
};

class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fuyau
