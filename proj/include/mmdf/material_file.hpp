#pragma once

#include <filesystem>
#include <iosfwd>

#include "mmdf/materials.hpp"

namespace mmdf {

// Material database text format, one record per line:
//
//   <id> <variant> <parameters...>
//
//   lossless_dielectric   eps
//   magnetic_power_law    mu1 alpha mu1_imag beta
//   dielectric_power_law  eps1 alpha eps1_imag beta
//   magnetic_relaxation   mu_m f_m
//
// Fields are separated by whitespace and/or commas. '#' starts a comment.
// Ids must run 1, 2, ... in file order. Throws ConfigError on any defect.
MaterialDatabase parse_material_database(std::istream& in);
MaterialDatabase load_material_database(const std::filesystem::path& path);

void write_material_database(std::ostream& out, const MaterialDatabase& db);

}  // namespace mmdf
