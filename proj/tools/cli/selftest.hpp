#pragma once

#include <filesystem>
#include <iosfwd>

namespace lqjoint::cli {

// Runs the invariant suite over every *.scn fixture in `scenario_dir` plus the
// built-in closed-form atom cases. Prints one PASS/FAIL line per identity.
// Returns 0 iff everything passes; an unreadable fixture fails immediately.
int run_selftest(const std::filesystem::path& scenario_dir, std::ostream& out);

}  // namespace lqjoint::cli
