#include "rho_file.hpp"

#include "lqjoint/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace lqjoint::cli {

namespace {

std::vector<double> numbers(std::string_view line, std::string_view source, std::size_t line_no) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r,", pos);
    if (start == std::string_view::npos) break;
    auto stop = line.find_first_of(" \t\r,", start);
    if (stop == std::string_view::npos) stop = line.size();
    const std::string_view token = line.substr(start, stop - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(value)) {
      throw InputError(fmt::format("{}: cannot parse number '{}'", source, token), line_no);
    }
    out.push_back(value);
    pos = stop;
  }
  return out;
}

}  // namespace

SpectralDensityFile read_spectral_density(std::istream& in, std::string_view source) {
  std::vector<std::pair<std::size_t, std::vector<double>>> rows;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto first = raw.find_first_not_of(" \t\r");
    if (first == std::string::npos || raw[first] == '#') continue;
    rows.emplace_back(line_no, numbers(raw, source, line_no));
  }
  if (rows.empty()) throw InputError(fmt::format("{}: empty density file", source));

  const auto& [size_line, size_row] = rows.front();
  if (size_row.size() != 1 || size_row[0] < 1 || size_row[0] != std::floor(size_row[0])) {
    throw InputError(fmt::format("{}: first line must be the order n", source), size_line);
  }
  const auto n = static_cast<std::size_t>(size_row[0]);
  if (rows.size() != n + 2) {
    throw MismatchError(
        fmt::format("{}: expected {} data lines after the order, found {}", source, n + 1,
                    rows.size() - 1));
  }
  SpectralDensityFile rho;
  rho.eigenvalues.resize(static_cast<Eigen::Index>(n));
  rho.eigenvectors.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& [line, values] = rows[r];
    if (values.size() != n) {
      throw MismatchError(
          fmt::format("{}: expected {} values, found {}", source, n, values.size()), line);
    }
    for (std::size_t c = 0; c < n; ++c) {
      const auto col = static_cast<Eigen::Index>(c);
      if (r == 1) rho.eigenvalues[col] = values[c];
      else rho.eigenvectors(static_cast<Eigen::Index>(r - 2), col) = values[c];
    }
  }
  return rho;
}

SpectralDensityFile read_spectral_density(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open density file '" + path.string() + "'");
  return read_spectral_density(in, path.string());
}

void write_spectral_density(std::ostream& out, const SpectralDensityFile& rho) {
  const auto n = rho.eigenvalues.size();
  out << n << '\n';
  for (Eigen::Index i = 0; i < n; ++i) out << (i ? " " : "") << fmt::format("{:.17g}", rho.eigenvalues[i]);
  out << '\n';
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      out << (c ? " " : "") << fmt::format("{:.17g}", rho.eigenvectors(r, c));
    }
    out << '\n';
  }
}

}  // namespace lqjoint::cli
