#include "lqjoint/datagen.hpp"

#include "lqjoint/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

namespace lqjoint {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Uniform draws built from raw engine bits so the sequence does not depend on
// the standard library's distribution implementations.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  // [0, 1)
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  // (-1, 1)
  double symmetric() {
    double u;
    do {
      u = 2.0 * uniform() - 1.0;
    } while (u == -1.0);
    return u;
  }

  // Marsaglia polar method.
  double normal() {
    for (;;) {
      const double u = symmetric();
      const double v = symmetric();
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
    }
  }

  // Bailey's polar method for Student's t.
  double student_t(double nu) {
    for (;;) {
      const double u = symmetric();
      const double v = symmetric();
      const double w = u * u + v * v;
      if (w > 0.0 && w < 1.0) return u * std::sqrt(nu * (std::pow(w, -2.0 / nu) - 1.0) / w);
    }
  }

 private:
  std::mt19937_64 engine_;
};

double smooth_value(const ProcessLawSpec& law, double x) {
  return law.amplitude * std::sin(law.frequency * x) + law.quadratic * x * x;
}

std::vector<double> draw_process(const ProcessLawSpec& law, std::span<const double> xs,
                                 std::span<const double> fs, Stream& stream) {
  std::vector<double> out(xs.size());
  for (std::size_t l = 0; l < xs.size(); ++l) {
    switch (law.law) {
      case ProcessLaw::None: break;
      case ProcessLaw::AffineOfX: out[l] = law.slope * xs[l] + law.intercept; break;
      case ProcessLaw::AffineOfF: out[l] = law.slope * fs[l] + law.intercept; break;
      case ProcessLaw::Smooth: out[l] = smooth_value(law, xs[l]); break;
      case ProcessLaw::Spikes: {
        const bool spike = stream.uniform() < law.rate;
        out[l] = smooth_value(law, xs[l]) + (spike ? law.magnitude : 0.0);
        break;
      }
      case ProcessLaw::StudentT: out[l] = law.scale * stream.student_t(law.nu); break;
    }
  }
  return out;
}

void validate_law(const ProcessLawSpec& law, const char* which) {
  const std::string prefix = std::string(which) + ": ";
  switch (law.law) {
    case ProcessLaw::Spikes:
      if (!(law.rate >= 0.0 && law.rate <= 1.0)) throw ConfigError(prefix + "rate must be in [0, 1]");
      if (!std::isfinite(law.magnitude)) throw ConfigError(prefix + "magnitude must be finite");
      break;
    case ProcessLaw::StudentT:
      if (!(law.nu > 1.0) || !std::isfinite(law.nu)) {
        throw ConfigError(prefix + "student_t needs nu > 1 for a finite mean");
      }
      if (!(law.scale > 0.0) || !std::isfinite(law.scale)) {
        throw ConfigError(prefix + "scale must be positive");
      }
      break;
    default: break;
  }
  for (double v : {law.slope, law.intercept, law.amplitude, law.frequency, law.quadratic}) {
    if (!std::isfinite(v)) throw ConfigError(prefix + "non-finite law parameter");
  }
}

}  // namespace

void ScenarioSpec::validate() const {
  if (samples < 1) throw ConfigError("scenario '" + name + "': samples must be at least 1");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw ConfigError("scenario '" + name + "': need finite x_min < x_max");
  }
  if (x_law == XLaw::Clustered && !(cluster_width > 0.0)) {
    throw ConfigError("scenario '" + name + "': cluster_width must be positive");
  }
  if (f.law == ProcessLaw::None || f.law == ProcessLaw::AffineOfF) {
    throw ConfigError("scenario '" + name + "': f_law must not be none or affine_of_f");
  }
  validate_law(f, "f");
  validate_law(g, "g");
  if (weight_law == WeightLaw::Constant && !(weight_value > 0.0 && std::isfinite(weight_value))) {
    throw ConfigError("scenario '" + name + "': weight.value must be positive");
  }
}

SampleSet generate(const ScenarioSpec& spec) {
  spec.validate();
  std::uint64_t seeder = spec.seed;
  Stream x_stream(splitmix64(seeder));
  Stream f_stream(splitmix64(seeder));
  Stream g_stream(splitmix64(seeder));
  Stream w_stream(splitmix64(seeder));

  const std::size_t m = spec.samples;
  const double span = spec.x_max - spec.x_min;
  std::vector<double> x(m);
  for (std::size_t l = 0; l < m; ++l) {
    switch (spec.x_law) {
      case XLaw::UniformGrid:
        x[l] = m == 1 ? 0.5 * (spec.x_min + spec.x_max)
                      : (l + 1 == m ? spec.x_max
                                    : spec.x_min + span * static_cast<double>(l) /
                                                       static_cast<double>(m - 1));
        break;
      case XLaw::MidpointGrid:
        x[l] = spec.x_min + span * (static_cast<double>(l) + 0.5) / static_cast<double>(m);
        break;
      case XLaw::UniformRandom: x[l] = spec.x_min + span * x_stream.uniform(); break;
      case XLaw::Clustered: {
        static constexpr double centers[] = {0.2, 0.5, 0.8};
        const auto pick = static_cast<int>(3.0 * x_stream.uniform());
        x[l] = spec.x_min + span * (centers[pick] + spec.cluster_width * x_stream.normal());
        break;
      }
    }
  }

  std::vector<double> w(m);
  for (std::size_t l = 0; l < m; ++l) {
    switch (spec.weight_law) {
      case WeightLaw::Unit: w[l] = 1.0; break;
      case WeightLaw::Constant: w[l] = spec.weight_value; break;
      case WeightLaw::RandomPositive: w[l] = 0.5 + w_stream.uniform(); break;
    }
  }

  std::vector<double> f = draw_process(spec.f, x, {}, f_stream);
  std::optional<std::vector<double>> g;
  if (spec.g.law != ProcessLaw::None) g = draw_process(spec.g, x, f, g_stream);
  return SampleSet::from_columns(std::move(x), std::move(w), std::move(f), std::move(g));
}

namespace {

const std::map<std::string, XLaw, std::less<>> kXLaws = {
    {"uniform_grid", XLaw::UniformGrid},
    {"midpoint_grid", XLaw::MidpointGrid},
    {"uniform_random", XLaw::UniformRandom},
    {"clustered", XLaw::Clustered},
};
const std::map<std::string, ProcessLaw, std::less<>> kProcessLaws = {
    {"none", ProcessLaw::None},         {"affine_of_x", ProcessLaw::AffineOfX},
    {"affine_of_f", ProcessLaw::AffineOfF}, {"smooth", ProcessLaw::Smooth},
    {"spikes", ProcessLaw::Spikes},     {"student_t", ProcessLaw::StudentT},
};
const std::map<std::string, WeightLaw, std::less<>> kWeightLaws = {
    {"unit", WeightLaw::Unit},
    {"constant", WeightLaw::Constant},
    {"random_positive", WeightLaw::RandomPositive},
};

template <class Map>
std::string_view name_of(const Map& map, typename Map::mapped_type value) {
  for (const auto& [key, v] : map) {
    if (v == value) return key;
  }
  return "?";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class LineParser {
 public:
  LineParser(std::string_view source, std::size_t line) : source_(source), line_(line) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw InputError(std::string(source_) + ": " + what, line_);
  }

  double real(std::string_view text) const {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
      fail("expected a finite number, got '" + std::string(text) + "'");
    }
    return value;
  }

  std::uint64_t integer(std::string_view text) const {
    std::uint64_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
      fail("expected a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
  }

  template <class Map>
  typename Map::mapped_type lookup(const Map& map, std::string_view text) const {
    const auto it = map.find(text);
    if (it == map.end()) fail("unknown law '" + std::string(text) + "'");
    return it->second;
  }

 private:
  std::string_view source_;
  std::size_t line_;
};

bool set_law_field(ProcessLawSpec& law, std::string_view field, std::string_view value,
                   const LineParser& p) {
  if (field == "slope") law.slope = p.real(value);
  else if (field == "intercept") law.intercept = p.real(value);
  else if (field == "amplitude") law.amplitude = p.real(value);
  else if (field == "frequency") law.frequency = p.real(value);
  else if (field == "quadratic") law.quadratic = p.real(value);
  else if (field == "rate") law.rate = p.real(value);
  else if (field == "magnitude") law.magnitude = p.real(value);
  else if (field == "nu") law.nu = p.real(value);
  else if (field == "scale") law.scale = p.real(value);
  else return false;
  return true;
}

}  // namespace

ScenarioSpec parse_scenario(std::istream& in, std::string_view source) {
  ScenarioSpec spec;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const LineParser p(source, line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) p.fail("expected 'key = value'");
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) p.fail("expected 'key = value'");

    if (key == "name") spec.name = std::string(value);
    else if (key == "samples") spec.samples = p.integer(value);
    else if (key == "seed") spec.seed = p.integer(value);
    else if (key == "x_law") spec.x_law = p.lookup(kXLaws, value);
    else if (key == "x_min") spec.x_min = p.real(value);
    else if (key == "x_max") spec.x_max = p.real(value);
    else if (key == "cluster_width") spec.cluster_width = p.real(value);
    else if (key == "f_law") spec.f.law = p.lookup(kProcessLaws, value);
    else if (key == "g_law") spec.g.law = p.lookup(kProcessLaws, value);
    else if (key == "weight_law") spec.weight_law = p.lookup(kWeightLaws, value);
    else if (key == "weight.value") spec.weight_value = p.real(value);
    else if (key.starts_with("f.") && set_law_field(spec.f, key.substr(2), value, p)) continue;
    else if (key.starts_with("g.") && set_law_field(spec.g, key.substr(2), value, p)) continue;
    else p.fail("unknown key '" + std::string(key) + "'");
  }
  try {
    spec.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(source) + ": " + e.what());
  }
  return spec;
}

ScenarioSpec load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path.string() + "'");
  return parse_scenario(in, path.string());
}

namespace {

void write_law(std::ostream& out, char which, const ProcessLawSpec& law) {
  out << which << "_law = " << name_of(kProcessLaws, law.law) << '\n';
  const auto field = [&](const char* key, double v) {
    out << which << '.' << key << " = " << v << '\n';
  };
  switch (law.law) {
    case ProcessLaw::AffineOfX:
    case ProcessLaw::AffineOfF:
      field("slope", law.slope);
      field("intercept", law.intercept);
      break;
    case ProcessLaw::Spikes:
      field("rate", law.rate);
      field("magnitude", law.magnitude);
      [[fallthrough]];
    case ProcessLaw::Smooth:
      field("amplitude", law.amplitude);
      field("frequency", law.frequency);
      field("quadratic", law.quadratic);
      break;
    case ProcessLaw::StudentT:
      field("nu", law.nu);
      field("scale", law.scale);
      break;
    case ProcessLaw::None: break;
  }
}

}  // namespace

void write_scenario(std::ostream& out, const ScenarioSpec& spec) {
  const auto flags = out.flags();
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "name = " << spec.name << '\n'
      << "samples = " << spec.samples << '\n'
      << "seed = " << spec.seed << '\n'
      << "x_law = " << name_of(kXLaws, spec.x_law) << '\n'
      << "x_min = " << spec.x_min << '\n'
      << "x_max = " << spec.x_max << '\n';
  if (spec.x_law == XLaw::Clustered) out << "cluster_width = " << spec.cluster_width << '\n';
  write_law(out, 'f', spec.f);
  write_law(out, 'g', spec.g);
  out << "weight_law = " << name_of(kWeightLaws, spec.weight_law) << '\n';
  if (spec.weight_law == WeightLaw::Constant) out << "weight.value = " << spec.weight_value << '\n';
  out.precision(precision);
  out.flags(flags);
}

}  // namespace lqjoint
