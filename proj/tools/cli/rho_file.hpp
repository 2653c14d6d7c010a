#pragma once

#include "lqjoint/joint.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace lqjoint::cli {

// Spectral density file: first line n, second line the n eigenvalues, then n
// lines each holding one row of the n x n eigenvector matrix (column j is
// eigenvector j, expressed in the f eigenbasis). Whitespace or commas
// separate numbers; `#` lines are skipped.
struct SpectralDensityFile {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
};

SpectralDensityFile read_spectral_density(std::istream& in, std::string_view source = "<rho>");
SpectralDensityFile read_spectral_density(const std::filesystem::path& path);
void write_spectral_density(std::ostream& out, const SpectralDensityFile& rho);

}  // namespace lqjoint::cli
