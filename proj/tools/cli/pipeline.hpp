#pragma once

#include "lqjoint/basis.hpp"
#include "lqjoint/joint.hpp"
#include "lqjoint/moments.hpp"
#include "lqjoint/spectral.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lqjoint::cli {

enum class GramRoute { Samples, Moments };
enum class OutputFormat { Json, Csv };

struct RhoSource {
  enum class Kind { PureUnit, Identity, Spectral };
  Kind kind = Kind::PureUnit;
  std::filesystem::path path;

  // "unit", "identity" or "spectral:<path>".
  static RhoSource parse(std::string_view text);
  std::string label() const;
};

struct RunConfig {
  std::optional<std::filesystem::path> input;
  std::optional<std::string> scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::filesystem::path> scenario_dir;
  int n = 8;
  BasisFamily basis = BasisFamily::Chebyshev;
  std::optional<std::pair<double, double>> domain;
  GramRoute route = GramRoute::Samples;
  std::vector<JointKind> kinds{JointKind::Value, JointKind::Probability};
  RhoSource rho;
  double epsilon = 1e-12;
  OutputFormat format = OutputFormat::Json;
  std::optional<std::filesystem::path> output;

  // Throws ConfigError for inconsistent settings.
  void validate(bool joint) const;
};

// Directory holding the built-in *.scn scenarios: the LQJOINT_SCENARIO_DIR
// environment variable if set, else the location recorded at build time.
std::filesystem::path default_scenario_dir();

// A scenario argument naming an existing file is used as is; otherwise it is
// looked up as <dir>/<name>.scn.
std::filesystem::path resolve_scenario(const std::string& scenario,
                                       const std::filesystem::path& dir);

struct LoadedSamples {
  SampleSet samples;
  std::string source;
  std::optional<std::uint64_t> seed;
};

LoadedSamples load_samples(const RunConfig& config);

struct PipelineResult {
  std::string source;
  std::optional<std::uint64_t> seed;
  GramSet grams;
  LebesgueQuadrature quad_f;
  std::optional<LebesgueQuadrature> quad_g;
  // Largest relative gap between g nodes from the f-basis route and from the
  // direct generalized solve.
  std::optional<double> two_route_residual;
};

// Samples -> Grams -> f quadrature -> g quadrature in the f eigenbasis.
PipelineResult run_pipeline(const RunConfig& config, const SampleSet& samples);

}  // namespace lqjoint::cli
