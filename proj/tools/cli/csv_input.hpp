#pragma once

#include "lqjoint/moments.hpp"

#include <filesystem>
#include <iosfwd>
#include <string_view>

namespace lqjoint::cli {

// Header `x,w,f,g` in any order; x and f required, w defaults to 1, g
// optional. `#` lines and blank lines are skipped. Any malformed, missing or
// non-finite field rejects the whole input with the offending line number.
SampleSet read_samples_csv(std::istream& in, std::string_view source = "<csv>");
SampleSet read_samples_csv(const std::filesystem::path& path);

// Writes the `x,w,f[,g]` format read above with 17 significant digits.
void write_samples_csv(std::ostream& out, const SampleSet& samples);

}  // namespace lqjoint::cli
