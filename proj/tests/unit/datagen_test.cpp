#include "doctest.h"

#include "lqjoint/datagen.hpp"
#include "lqjoint/errors.hpp"
#include "lqjoint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <filesystem>
#include <sstream>

using namespace lqjoint;

namespace {

bool bit_identical(std::span<const double> a, std::span<const double> b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::vector<std::size_t> spike_positions(const ScenarioSpec& spec, const SampleSet& s) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < s.size(); ++l) {
    const double x = s.x()[l];
    const double base =
        spec.f.amplitude * std::sin(spec.f.frequency * x) + spec.f.quadratic * x * x;
    if (s.f()[l] - base > 0.5 * spec.f.magnitude) out.push_back(l);
  }
  return out;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

std::vector<std::filesystem::path> shipped_scenarios() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(LQJOINT_TEST_SCENARIO_DIR)) {
    if (entry.path().extension() == ".scn") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("smallest grid is the two-atom set") {
  ScenarioSpec spec;
  spec.samples = 2;
  const auto s = generate(spec);
  REQUIRE(s.size() == 2);
  CHECK(s.x()[0] == -1.0);
  CHECK(s.x()[1] == 1.0);
  CHECK(s.f()[0] == -1.0);
  CHECK(s.f()[1] == 1.0);
  CHECK(s.weight()[0] == 1.0);
  CHECK(s.weight()[1] == 1.0);
  CHECK_FALSE(s.has_g());
}

TEST_CASE("x laws") {
  ScenarioSpec spec;
  spec.samples = 5;
  spec.x_min = 0.0;
  spec.x_max = 10.0;
  spec.x_law = XLaw::UniformGrid;
  auto s = generate(spec);
  CHECK(s.x()[0] == 0.0);
  CHECK(s.x()[4] == 10.0);
  CHECK(s.x()[2] == doctest::Approx(5.0));
  spec.x_law = XLaw::MidpointGrid;
  s = generate(spec);
  CHECK(s.x()[0] == doctest::Approx(1.0));
  CHECK(s.x()[4] == doctest::Approx(9.0));
  spec.samples = 1;
  spec.x_law = XLaw::UniformGrid;
  CHECK(generate(spec).x()[0] == doctest::Approx(5.0));

  spec.samples = 2000;
  for (auto law : {XLaw::UniformRandom, XLaw::Clustered}) {
    spec.x_law = law;
    s = generate(spec);
    CHECK(s.x_min() >= 0.0);
    CHECK(s.x_max() <= 10.0);
  }
}

TEST_CASE("same seed, same bits; different seed, different data") {
  ScenarioSpec spec;
  spec.samples = 3000;
  spec.seed = 42;
  spec.x_law = XLaw::Clustered;
  spec.f = {.law = ProcessLaw::Spikes, .rate = 0.05, .magnitude = 100.0};
  spec.g = {.law = ProcessLaw::StudentT, .nu = 2.5};
  spec.weight_law = WeightLaw::RandomPositive;
  const auto a = generate(spec);
  const auto b = generate(spec);
  CHECK(bit_identical(a.x(), b.x()));
  CHECK(bit_identical(a.weight(), b.weight()));
  CHECK(bit_identical(a.f(), b.f()));
  CHECK(bit_identical(a.g(), b.g()));
  spec.seed = 43;
  const auto c = generate(spec);
  CHECK_FALSE(bit_identical(a.f(), c.f()));
}

TEST_CASE("spike positions repeat under the same seed") {
  ScenarioSpec spec;
  spec.samples = 10000;
  spec.seed = 7;
  spec.x_min = 0.0;
  spec.x_max = 10.0;
  spec.f = {.law = ProcessLaw::Spikes, .rate = 0.01, .magnitude = 1000.0};
  const auto first = spike_positions(spec, generate(spec));
  const auto second = spike_positions(spec, generate(spec));
  CHECK(first == second);
  // 100 expected; generous binomial band
  CHECK(first.size() >= 60);
  CHECK(first.size() <= 140);
}

TEST_CASE("student t with nu = 1.5: variance grows, mean settles") {
  std::vector<double> var_small, var_large, mean_small, mean_large;
  for (std::uint64_t seed = 1; seed <= 21; ++seed) {
    for (std::size_t m : {std::size_t{1000}, std::size_t{100000}}) {
      ScenarioSpec spec;
      spec.samples = m;
      spec.seed = seed;
      spec.x_law = XLaw::UniformRandom;
      spec.f = {.law = ProcessLaw::StudentT, .nu = 1.5};
      const auto s = generate(spec);
      double sum = 0.0, sq = 0.0;
      for (double v : s.f()) {
        sum += v;
        sq += v * v;
      }
      const double mean = sum / static_cast<double>(m);
      const double var = sq / static_cast<double>(m) - mean * mean;
      (m == 1000 ? var_small : var_large).push_back(var);
      (m == 1000 ? mean_small : mean_large).push_back(std::abs(mean));
    }
  }
  CHECK(median(var_large) > 2.0 * median(var_small));
  CHECK(median(mean_large) < median(mean_small));
}

TEST_CASE("weights are always positive") {
  for (auto law : {WeightLaw::Unit, WeightLaw::Constant, WeightLaw::RandomPositive}) {
    ScenarioSpec spec;
    spec.samples = 5000;
    spec.weight_law = law;
    spec.weight_value = 0.25;
    const auto s = generate(spec);
    CHECK(*std::min_element(s.weight().begin(), s.weight().end()) > 0.0);
  }
}

TEST_CASE("g laws") {
  ScenarioSpec spec;
  spec.samples = 50;
  spec.f = {.law = ProcessLaw::Smooth};
  spec.g = {.law = ProcessLaw::AffineOfF, .slope = -2.0, .intercept = 0.5};
  auto s = generate(spec);
  for (std::size_t l = 0; l < s.size(); ++l) CHECK(s.g()[l] == -2.0 * s.f()[l] + 0.5);
  spec.g = {.law = ProcessLaw::AffineOfX, .slope = 3.0, .intercept = 1.0};
  s = generate(spec);
  for (std::size_t l = 0; l < s.size(); ++l) CHECK(s.g()[l] == 3.0 * s.x()[l] + 1.0);
}

TEST_CASE("invalid parameters") {
  ScenarioSpec spec;
  spec.samples = 0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.samples = 10;
  spec.f = {.law = ProcessLaw::StudentT, .nu = 1.0};
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.f = {.law = ProcessLaw::Spikes, .rate = 1.5};
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.f = {.law = ProcessLaw::None};
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.f = {.law = ProcessLaw::AffineOfF};
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.f = {};
  spec.x_min = 1.0;
  spec.x_max = 1.0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.x_max = 2.0;
  spec.weight_law = WeightLaw::Constant;
  spec.weight_value = 0.0;
  CHECK_THROWS_AS(generate(spec), ConfigError);
  spec.weight_value = 1.0;
  CHECK_NOTHROW(generate(spec));
}

TEST_CASE("scenario text round trip") {
  ScenarioSpec spec;
  spec.name = "round";
  spec.samples = 123;
  spec.seed = 0xfeedbeefcafeULL;
  spec.x_law = XLaw::Clustered;
  spec.x_min = -0.1;
  spec.x_max = 3.3;
  spec.cluster_width = 0.07;
  spec.f = {.law = ProcessLaw::Spikes, .amplitude = 0.3, .frequency = 1.1, .rate = 0.02,
            .magnitude = 77.5};
  spec.g = {.law = ProcessLaw::StudentT, .nu = 1.7, .scale = 0.1};
  spec.weight_law = WeightLaw::RandomPositive;
  std::stringstream text;
  write_scenario(text, spec);
  const auto back = parse_scenario(text);
  std::stringstream again;
  write_scenario(again, back);
  CHECK(text.str() == again.str());
  const auto a = generate(spec);
  const auto b = generate(back);
  CHECK(bit_identical(a.f(), b.f()));
  CHECK(bit_identical(a.g(), b.g()));
  CHECK(bit_identical(a.weight(), b.weight()));
}

TEST_CASE("scenario parse errors carry line numbers") {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_scenario(in, "t.scn");
    } catch (const InputError& e) {
      return std::string(e.what());
    } catch (const ConfigError& e) {
      return std::string("config: ") + e.what();
    }
    return std::string();
  };
  CHECK(message("samples = 10\n# note\nbogus = 1\n").find("line 3") != std::string::npos);
  CHECK(message("samples = ten\n").find("line 1") != std::string::npos);
  CHECK(message("samples 10\n").find("line 1") != std::string::npos);
  CHECK(message("x_law = spiral\n").find("line 1") != std::string::npos);
  CHECK(message("f_law = student_t\nf.nu = 0.5\n").find("config: ") == 0);
  CHECK(message("f_law = student_t\nf.nu = 0.5\n").find("t.scn") != std::string::npos);
}

TEST_CASE("every shipped scenario runs at orders 1 to 12") {
  const auto files = shipped_scenarios();
  REQUIRE(files.size() >= 6);
  for (const auto& path : files) {
    const auto spec = load_scenario_file(path);
    const auto samples = generate(spec);
    CHECK(bit_identical(samples.f(), generate(spec).f()));
    for (int n = 1; n <= 12; ++n) {
      CAPTURE(path.string());
      CAPTURE(n);
      const BasisSpec basis{BasisFamily::Chebyshev, n, domain_from_samples(samples, n)};
      const auto grams = accumulate_grams(samples, basis, n);
      CHECK_NOTHROW(lebesgue_quadrature(grams, Process::F));
      if (samples.has_g()) CHECK_NOTHROW(lebesgue_quadrature(grams, Process::G));
    }
  }
}
