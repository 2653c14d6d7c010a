#include "pipeline.hpp"

#include "lqjoint/datagen.hpp"
#include "lqjoint/errors.hpp"

#include "csv_input.hpp"

#include <cmath>
#include <cstdlib>

#ifndef LQJOINT_DEFAULT_SCENARIO_DIR
#define LQJOINT_DEFAULT_SCENARIO_DIR "data/scenarios"
#endif

namespace lqjoint::cli {

RhoSource RhoSource::parse(std::string_view text) {
  RhoSource rho;
  if (text == "unit") {
    rho.kind = Kind::PureUnit;
  } else if (text == "identity") {
    rho.kind = Kind::Identity;
  } else if (text.starts_with("spectral:") && text.size() > 9) {
    rho.kind = Kind::Spectral;
    rho.path = std::string(text.substr(9));
  } else {
    throw ConfigError("--rho must be unit, identity or spectral:<path>, got '" +
                      std::string(text) + "'");
  }
  return rho;
}

std::string RhoSource::label() const {
  switch (kind) {
    case Kind::PureUnit: return "unit";
    case Kind::Identity: return "identity";
    case Kind::Spectral: return "spectral:" + path.string();
  }
  return "unknown";
}

void RunConfig::validate(bool joint) const {
  if (input.has_value() == scenario.has_value()) {
    throw ConfigError("exactly one of --input and --scenario is required");
  }
  if (seed && !scenario) throw ConfigError("--seed applies only to --scenario runs");
  if (n < 1) throw ConfigError("--n must be at least 1");
  if (!(epsilon >= 0.0)) throw ConfigError("--epsilon must be non-negative");
  if (domain && !(domain->first < domain->second)) {
    throw ConfigError("--domain needs x_min < x_max");
  }
  if (joint && kinds.empty()) throw ConfigError("--kinds must name at least one kind");
}

std::filesystem::path default_scenario_dir() {
  if (const char* env = std::getenv("LQJOINT_SCENARIO_DIR"); env && *env) return env;
  return LQJOINT_DEFAULT_SCENARIO_DIR;
}

std::filesystem::path resolve_scenario(const std::string& scenario,
                                       const std::filesystem::path& dir) {
  const std::filesystem::path direct(scenario);
  if (std::filesystem::is_regular_file(direct)) return direct;
  const auto named = dir / (scenario + ".scn");
  if (std::filesystem::is_regular_file(named)) return named;
  throw InputError("unknown scenario '" + scenario + "' (looked in " + dir.string() + ")");
}

LoadedSamples load_samples(const RunConfig& config) {
  if (config.input) {
    return {read_samples_csv(*config.input), config.input->string(), std::nullopt};
  }
  const auto dir = config.scenario_dir.value_or(default_scenario_dir());
  ScenarioSpec spec = load_scenario_file(resolve_scenario(*config.scenario, dir));
  if (config.seed) spec.seed = *config.seed;
  return {generate(spec), spec.name, spec.seed};
}

PipelineResult run_pipeline(const RunConfig& config, const SampleSet& samples) {
  BasisSpec basis;
  basis.family = config.basis;
  basis.domain = config.domain ? DomainMap(config.domain->first, config.domain->second)
                               : domain_from_samples(samples, config.n);

  PipelineResult result;
  if (config.route == GramRoute::Moments) {
    basis.size = 2 * config.n;
    result.grams = grams_from_moments(moments_from_samples(samples, basis, config.n), config.n);
  } else {
    basis.size = config.n;
    result.grams = accumulate_grams(samples, basis, config.n);
  }

  const SolverOptions options{.epsilon = config.epsilon};
  result.quad_f = lebesgue_quadrature(result.grams, Process::F, options);
  if (result.grams.has_g()) {
    result.quad_g = quadrature_g_via_f(result.grams, result.quad_f);
    const auto direct = solve_generalized(*result.grams.gram_g, result.grams.gram, options);
    double worst = 0.0;
    if (direct.size() != result.quad_g->size()) {
      worst = INFINITY;
    } else {
      const double scale = std::max(direct.eigenvalues.cwiseAbs().maxCoeff(), 1e-300);
      worst = (direct.eigenvalues - result.quad_g->nodes).cwiseAbs().maxCoeff() / scale;
    }
    result.two_route_residual = worst;
  }
  return result;
}

}  // namespace lqjoint::cli
