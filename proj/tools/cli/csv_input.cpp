#include "csv_input.hpp"

#include "lqjoint/errors.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace lqjoint::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

enum Column { kX, kW, kF, kG, kColumns };

}  // namespace

SampleSet read_samples_csv(std::istream& in, std::string_view source) {
  const auto fail = [&](const std::string& what, std::size_t line) -> InputError {
    return InputError(std::string(source) + ": " + what, line);
  };

  std::array<std::optional<std::size_t>, kColumns> position;
  std::size_t header_width = 0;
  bool have_header = false;
  std::vector<double> x, w, f, g;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (line_no == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto fields = split(line);

    if (!have_header) {
      for (std::size_t c = 0; c < fields.size(); ++c) {
        const std::string_view name = fields[c];
        Column col;
        if (name == "x") col = kX;
        else if (name == "w") col = kW;
        else if (name == "f") col = kF;
        else if (name == "g") col = kG;
        else throw fail("unknown column '" + std::string(name) + "' in header", line_no);
        if (position[col]) throw fail("duplicate column '" + std::string(name) + "'", line_no);
        position[col] = c;
      }
      if (!position[kX] || !position[kF]) {
        throw fail("header must name at least the x and f columns", line_no);
      }
      header_width = fields.size();
      have_header = true;
      continue;
    }

    if (fields.size() != header_width) {
      throw fail(fmt::format("expected {} fields, found {}", header_width, fields.size()),
                 line_no);
    }
    std::array<double, kColumns> values{0.0, 1.0, 0.0, 0.0};
    for (int col = 0; col < kColumns; ++col) {
      if (!position[col]) continue;
      const std::string_view text = fields[*position[col]];
      static constexpr std::array<const char*, kColumns> names{"x", "w", "f", "g"};
      if (text.empty()) throw fail(fmt::format("missing value for {}", names[col]), line_no);
      double value = 0.0;
      const char* end = text.data() + text.size();
      const auto [ptr, ec] = std::from_chars(text.data(), end, value);
      if (ec != std::errc() || ptr != end) {
        throw fail(fmt::format("cannot parse {} value '{}'", names[col], text), line_no);
      }
      if (!std::isfinite(value)) {
        throw fail(fmt::format("non-finite {} value '{}'", names[col], text), line_no);
      }
      values[col] = value;
    }
    if (values[kW] < 0.0) throw fail(fmt::format("negative weight {}", values[kW]), line_no);
    x.push_back(values[kX]);
    w.push_back(values[kW]);
    f.push_back(values[kF]);
    if (position[kG]) g.push_back(values[kG]);
  }
  if (!have_header) throw fail("missing header line", line_no);
  if (x.empty()) throw fail("no data records", line_no);

  std::optional<std::vector<double>> g_column;
  if (position[kG]) g_column = std::move(g);
  return SampleSet::from_columns(std::move(x), std::move(w), std::move(f), std::move(g_column));
}

SampleSet read_samples_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  return read_samples_csv(in, path.string());
}

void write_samples_csv(std::ostream& out, const SampleSet& samples) {
  out << (samples.has_g() ? "x,w,f,g\n" : "x,w,f\n");
  const auto x = samples.x();
  const auto w = samples.weight();
  const auto f = samples.f();
  const auto g = samples.g();
  for (std::size_t l = 0; l < samples.size(); ++l) {
    out << fmt::format("{:.17g},{:.17g},{:.17g}", x[l], w[l], f[l]);
    if (samples.has_g()) out << fmt::format(",{:.17g}", g[l]);
    out << '\n';
  }
}

}  // namespace lqjoint::cli
