#pragma once

#include "pipeline.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace lqjoint::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitSelftestFailed = 1,
  kExitInput = 2,
  kExitConditioning = 3,
  kExitMismatch = 4,
};

// Writes the report to config.output or, when unset, to `out`.
int cmd_quadrature(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_joint(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_selftest(const std::filesystem::path& scenario_dir, std::ostream& out);
// Writes the samples of a scenario as CSV.
int cmd_generate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Full command line, argv[0] excluded.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lqjoint::cli
