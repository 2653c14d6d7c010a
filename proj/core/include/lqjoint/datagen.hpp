#pragma once

#include "lqjoint/moments.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace lqjoint {

enum class XLaw { UniformGrid, MidpointGrid, UniformRandom, Clustered };

enum class ProcessLaw {
  None,       // g only: no second process
  AffineOfX,  // slope * x + intercept
  AffineOfF,  // g only: slope * f + intercept
  Smooth,     // amplitude * sin(frequency * x) + quadratic * x^2
  Spikes,     // smooth base plus `magnitude` with probability `rate`
  StudentT,   // scale * t_nu, nu > 1
};

enum class WeightLaw { Unit, Constant, RandomPositive };

struct ProcessLawSpec {
  ProcessLaw law = ProcessLaw::AffineOfX;
  double slope = 1.0;
  double intercept = 0.0;
  double amplitude = 1.0;
  double frequency = 3.0;
  double quadratic = 0.5;
  double rate = 0.01;
  double magnitude = 1000.0;
  double nu = 3.0;
  double scale = 1.0;
};

struct ScenarioSpec {
  std::string name = "scenario";
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  XLaw x_law = XLaw::UniformGrid;
  double x_min = -1.0;
  double x_max = 1.0;
  double cluster_width = 0.05;  // fraction of the x range
  ProcessLawSpec f;
  ProcessLawSpec g{.law = ProcessLaw::None};
  WeightLaw weight_law = WeightLaw::Unit;
  double weight_value = 1.0;  // WeightLaw::Constant

  // Throws ConfigError on invalid parameters.
  void validate() const;
};

// Deterministic: the same spec (seed included) gives a bit-identical set.
// Streams are mt19937_64 seeded through splitmix64, one per column.
SampleSet generate(const ScenarioSpec& spec);

// Plain-text scenario files: `key = value` per line, `#` comments.
// Keys mirror ScenarioSpec (`samples`, `seed`, `x_law`, `f_law`, `f.rate`, ...).
ScenarioSpec parse_scenario(std::istream& in, std::string_view source = "<scenario>");
ScenarioSpec load_scenario_file(const std::filesystem::path& path);
void write_scenario(std::ostream& out, const ScenarioSpec& spec);

}  // namespace lqjoint
