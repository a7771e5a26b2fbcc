#pragma once

#include <filesystem>
#include <string>

#include "qsync/steady_state.hpp"

namespace qsync {

// Density-matrix file format (JSON):
//   { "dim": D, "entries": [[re, im], ...] }   D*D pairs, row-major.
// Doubles are written in shortest round-trip form, so a write/read cycle is bit-exact.

std::string density_to_json(const DensityMatrix& rho);
DensityMatrix density_from_json(const std::string& text, const std::string& source = "<string>");

void write_density_matrix(const DensityMatrix& rho, const std::filesystem::path& path);
DensityMatrix read_density_matrix(const std::filesystem::path& path);

}  // namespace qsync
