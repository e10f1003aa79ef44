#pragma once

// FYFIELD v1 dumps: one ASCII header line
//   FYFIELD v1 n=<n> N=<N> period=<p> kind=<scalar|hermitian>
// followed by little-endian float64 values in node order. Hermitian fields store
// n² numbers per node: real parts of the upper triangle (row-major, diagonal
// included), then imaginary parts of the strict upper triangle.

#include <iosfwd>
#include <string>
#include <variant>

#include "fuyau/grid.hpp"

namespace fuyau {

void write_field(std::ostream& os, const ScalarField& f);
void write_field(std::ostream& os, const HermitianField& f);
void write_field(const std::string& path, const ScalarField& f);
void write_field(const std::string& path, const HermitianField& f);

using AnyField = std::variant<ScalarField, HermitianField>;

/// Throws std::runtime_error on a malformed header or truncated body.
AnyField read_field(std::istream& is);
AnyField read_field(const std::string& path);

}  // namespace fuyau
