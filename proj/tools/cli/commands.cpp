#include "commands.hpp"

#include "lqjoint/errors.hpp"

#include "csv_input.hpp"
#include "report.hpp"
#include "rho_file.hpp"
#include "selftest.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace lqjoint::cli {

namespace {

// Runs `body`, translating library errors into exit codes.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const ConditioningError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConditioning;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

void emit(const RunConfig& config, const Json& report, std::ostream& out) {
  std::ostringstream text;
  if (config.format == OutputFormat::Csv) {
    write_csv(text, report);
  } else {
    write_json(text, report);
  }
  if (config.output) {
    std::ofstream file(*config.output, std::ios::binary);
    if (!file) throw InputError("cannot write output file '" + config.output->string() + "'");
    file << text.str();
  } else {
    out << text.str();
  }
}

PipelineResult run_from_config(const RunConfig& config) {
  const auto loaded = load_samples(config);
  auto result = run_pipeline(config, loaded.samples);
  result.source = loaded.source;
  result.seed = loaded.seed;
  return result;
}

DensityMatrix density_for(const RunConfig& config, const LebesgueQuadrature& quad_f) {
  switch (config.rho.kind) {
    case RhoSource::Kind::PureUnit: return density_from_pure_unit(quad_f);
    case RhoSource::Kind::Identity: return density_identity(quad_f.size());
    case RhoSource::Kind::Spectral: {
      const auto file = read_spectral_density(config.rho.path);
      if (file.eigenvalues.size() != quad_f.size()) {
        throw MismatchError("density file has order " + std::to_string(file.eigenvalues.size()) +
                            " but the quadrature has " + std::to_string(quad_f.size()) + " nodes");
      }
      return density_from_spectral(file.eigenvalues, file.eigenvectors);
    }
  }
  throw ConfigError("unsupported density source");
}

}  // namespace

int cmd_quadrature(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate(false);
    const auto result = run_from_config(config);
    emit(config, build_report(result, config, {}, std::nullopt), out);
    return kExitOk;
  });
}

int cmd_joint(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    config.validate(true);
    const auto loaded = load_samples(config);
    if (!loaded.samples.has_g()) {
      throw ConfigError("joint distribution needs a g column in " + loaded.source);
    }
    auto result = run_pipeline(config, loaded.samples);
    result.source = loaded.source;
    result.seed = loaded.seed;

    const auto s = projection(result.quad_f, *result.quad_g, result.grams);
    const auto rho = density_for(config, result.quad_f);
    std::vector<JointResult> joint;
    for (const auto kind : config.kinds) {
      joint.push_back(evaluate_joint(kind, result, s, rho, config.rho.label()));
    }
    emit(config, build_report(result, config, joint, s.orthogonality_residual()), out);
    return kExitOk;
  });
}

int cmd_selftest(const std::filesystem::path& scenario_dir, std::ostream& out) {
  return run_selftest(scenario_dir, out);
}

int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!config.scenario) throw ConfigError("generate needs --scenario");
    const auto loaded = load_samples(config);
    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw InputError("cannot write output file '" + config.output->string() + "'");
      write_samples_csv(file, loaded.samples);
    } else {
      write_samples_csv(out, loaded.samples);
    }
    return kExitOk;
  });
}

namespace {

struct CliOptions {
  std::string input;
  std::string scenario;
  std::string scenario_dir;
  std::uint64_t seed = 0;
  int n = 8;
  std::string basis = "chebyshev";
  std::vector<double> domain;
  std::string route = "samples";
  std::vector<std::string> kinds{"value", "probability"};
  std::string rho = "unit";
  double epsilon = 1e-12;
  std::string format = "json";
  std::string output;
};

void add_data_options(CLI::App& cmd, CliOptions& o) {
  cmd.add_option("--input", o.input, "CSV with header x,w,f,g (w and g optional)");
  cmd.add_option("--scenario", o.scenario, "built-in scenario name or scenario file path");
  cmd.add_option("--scenario-dir", o.scenario_dir, "directory searched for scenario names");
  cmd.add_option("--seed", o.seed, "override the scenario seed");
}

void add_run_options(CLI::App& cmd, CliOptions& o) {
  add_data_options(cmd, o);
  cmd.add_option("--n", o.n, "quadrature order")->capture_default_str();
  cmd.add_option("--basis", o.basis, "chebyshev|legendre|monomial")
      ->check(CLI::IsMember({"chebyshev", "legendre", "monomial"}))
      ->capture_default_str();
  cmd.add_option("--domain", o.domain, "x_min x_max mapped onto [-1, 1]")->expected(2);
  cmd.add_option("--route", o.route, "samples|moments")
      ->check(CLI::IsMember({"samples", "moments"}))
      ->capture_default_str();
  cmd.add_option("--epsilon", o.epsilon, "Gram regularization threshold")->capture_default_str();
  cmd.add_option("--format", o.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd.add_option("--output", o.output, "output path (default stdout)");
}

RunConfig to_config(const CliOptions& o, const CLI::App& cmd) {
  RunConfig c;
  if (!o.input.empty()) c.input = o.input;
  if (!o.scenario.empty()) c.scenario = o.scenario;
  if (!o.scenario_dir.empty()) c.scenario_dir = o.scenario_dir;
  if (cmd.count("--seed") > 0) c.seed = o.seed;
  c.n = o.n;
  c.basis = parse_basis_family(o.basis);
  if (o.domain.size() == 2) c.domain = std::make_pair(o.domain[0], o.domain[1]);
  c.route = o.route == "moments" ? GramRoute::Moments : GramRoute::Samples;
  c.kinds.clear();
  for (const auto& k : o.kinds) c.kinds.push_back(parse_joint_kind(k));
  c.rho = RhoSource::parse(o.rho);
  c.epsilon = o.epsilon;
  c.format = o.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  if (!o.output.empty()) c.output = o.output;
  return c;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lebesgue quadratures and joint distribution estimates from sampled data",
               "lqjoint"};
  app.require_subcommand(1);

  CliOptions opts;
  auto* quadrature = app.add_subcommand("quadrature", "nodes and weights for f (and g)");
  add_run_options(*quadrature, opts);

  auto* joint = app.add_subcommand("joint", "joint distribution matrices of f and g");
  add_run_options(*joint, opts);
  joint->add_option("--kinds", opts.kinds, "value,probability,density,pure_squared")
      ->delimiter(',')
      ->check(CLI::IsMember({"value", "probability", "density", "pure_squared"}));
  joint->add_option("--rho", opts.rho, "unit|identity|spectral:<path>")->capture_default_str();

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
  selftest->add_option("--scenario-dir", opts.scenario_dir, "fixture directory");

  auto* generate = app.add_subcommand("generate", "write a scenario's samples as CSV");
  add_data_options(*generate, opts);
  generate->add_option("--output", opts.output, "output path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  if (selftest->parsed()) {
    return cmd_selftest(opts.scenario_dir.empty() ? default_scenario_dir()
                                                  : std::filesystem::path(opts.scenario_dir),
                        out);
  }
  CLI::App* active = quadrature->parsed() ? quadrature : joint->parsed() ? joint : generate;
  RunConfig config;
  const int status = guarded(err, [&] {
    config = to_config(opts, *active);
    return kExitOk;
  });
  if (status != kExitOk) return status;
  if (quadrature->parsed()) return cmd_quadrature(config, out, err);
  if (joint->parsed()) return cmd_joint(config, out, err);
  return cmd_generate(config, out, err);
}

}  // namespace lqjoint::cli
