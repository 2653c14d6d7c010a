#include "selftest.hpp"

#include "lqjoint/datagen.hpp"
#include "lqjoint/errors.hpp"

#include "pipeline.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

namespace lqjoint::cli {

namespace {

constexpr double kSumRuleTolerance = 1e-8;
constexpr double kIdentityTolerance = 1e-10;

class Tally {
 public:
  explicit Tally(std::ostream& out) : out_(out) {}

  void check(const std::string& name, double residual, double tolerance) {
    const bool ok = std::isfinite(residual) && residual <= tolerance;
    record(name, ok, fmt::format("residual {:.3e} (tolerance {:.0e})", residual, tolerance));
  }

  void record(const std::string& name, bool ok, const std::string& detail) {
    out_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    if (ok) {
      ++passed_;
    } else {
      if (failed_ == 0) first_failure_ = name;
      ++failed_;
    }
  }

  int finish() {
    out_ << fmt::format("selftest: {} passed, {} failed\n", passed_, failed_);
    if (failed_ > 0) out_ << "first failure: " << first_failure_ << '\n';
    return failed_ == 0 ? 0 : 1;
  }

 private:
  std::ostream& out_;
  int passed_ = 0;
  int failed_ = 0;
  std::string first_failure_;
};

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

double scaled_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

DensityMatrix seeded_spectral_density(int n, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  const auto uniform = [&] { return static_cast<double>(engine() >> 11) * 0x1.0p-53; };
  Eigen::MatrixXd raw(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) raw(i, j) = uniform() - 0.5;
  }
  const Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ();
  Eigen::VectorXd lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = uniform();
  return density_from_spectral(lambda, q);
}

void check_joint_identities(Tally& tally, const std::string& prefix, const PipelineResult& r) {
  const auto& qf = r.quad_f;
  const auto& qg = *r.quad_g;
  const double total = r.grams.total_measure;
  const auto s = projection(qf, qg, r.grams);
  tally.check(prefix + "projection_orthogonality", s.orthogonality_residual(), kSumRuleTolerance);

  const auto v = value_correlation(qf, qg, s);
  tally.check(prefix + "value_total", std::abs(v.total() - total) / total, kSumRuleTolerance);
  tally.check(prefix + "value_rows",
              max_abs(v.w.rowwise().sum() - qf.weights) / total, kSumRuleTolerance);
  tally.check(prefix + "value_cols",
              max_abs(v.w.colwise().sum().transpose() - qg.weights) / total, kSumRuleTolerance);

  const auto p = probability_correlation(s);
  const double n = s.size();
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(s.size());
  tally.check(prefix + "probability_total", std::abs(p.total() - n) / n, kSumRuleTolerance);
  tally.check(prefix + "probability_doubly_stochastic",
              std::max(max_abs(p.w.rowwise().sum() - ones),
                       max_abs(p.w.colwise().sum().transpose() - ones)),
              kSumRuleTolerance);

  const auto unit = density_from_pure_unit(qf);
  const auto explicit_unit = density_from_matrix(unit.r);
  tally.check(prefix + "density_unit_is_value",
              scaled_diff(density_matrix_correlation(s, explicit_unit).w, v.w), kIdentityTolerance);
  tally.check(prefix + "density_identity_is_probability",
              scaled_diff(density_matrix_correlation(s, density_from_matrix(
                                                            Eigen::MatrixXd::Identity(s.size(), s.size()))).w,
                          p.w),
              kIdentityTolerance);
  const auto spectral = seeded_spectral_density(s.size(), 20180719);
  const auto d = density_matrix_correlation(s, spectral);
  tally.check(prefix + "density_spur", std::abs(d.total() - spectral.spur) / std::abs(spectral.spur),
              kSumRuleTolerance);

  const auto sq = pure_squared_correlation(s, explicit_unit);
  const Eigen::MatrixXd product = qf.weights * qg.weights.transpose();
  tally.check(prefix + "pure_factorization", scaled_diff(sq.w, product), kIdentityTolerance);
  tally.check(prefix + "pure_total", std::abs(sq.total() - total * total) / (total * total),
              kSumRuleTolerance);
  tally.check(prefix + "pureness_unit", pureness_estimate(s, explicit_unit), kSumRuleTolerance);
  tally.check(prefix + "two_route", *r.two_route_residual, kSumRuleTolerance);
}

void check_fixture(Tally& tally, const ScenarioSpec& spec, const SampleSet& samples, int n) {
  const std::string prefix = fmt::format("{}/n={}/", spec.name, n);
  RunConfig config;
  config.n = n;
  PipelineResult result;
  try {
    result = run_pipeline(config, samples);
  } catch (const Error& e) {
    tally.record(prefix + "pipeline", false, e.what());
    return;
  }
  const auto rf = quadrature_residuals(result.grams, result.quad_f);
  tally.check(prefix + "weights_total", rf.total_measure, kSumRuleTolerance);
  tally.check(prefix + "weights_mean", rf.mean, kSumRuleTolerance);

  RunConfig moments = config;
  moments.route = GramRoute::Moments;
  const auto via_moments = run_pipeline(moments, samples).grams;
  double path = scaled_diff(via_moments.gram, result.grams.gram);
  path = std::max(path, scaled_diff(via_moments.gram_f, result.grams.gram_f));
  if (result.grams.gram_g) path = std::max(path, scaled_diff(*via_moments.gram_g, *result.grams.gram_g));
  tally.check(prefix + "path_equivalence", path, kIdentityTolerance);

  if (result.quad_g) check_joint_identities(tally, prefix, result);
}

// k atoms and order k: the quadrature is the atoms themselves and V is the
// exact joint distribution.
void check_atoms(Tally& tally, int k) {
  static constexpr double xs[] = {-0.7, 0.1, 0.9};
  static constexpr double ws[] = {0.5, 1.25, 2.0};
  static constexpr double fs[] = {2.0, -1.0, 0.5};
  static constexpr double gs[] = {-3.0, 4.0, 1.0};
  std::vector<double> x(xs, xs + k), w(ws, ws + k), f(fs, fs + k), g(gs, gs + k);
  const auto samples = SampleSet::from_columns(x, w, f, g);
  RunConfig config;
  config.n = k;
  config.basis = BasisFamily::Monomial;
  const std::string prefix = fmt::format("atoms/k={}/", k);
  const auto r = run_pipeline(config, samples);

  std::vector<int> by_f(k), by_g(k);
  for (int i = 0; i < k; ++i) by_f[i] = by_g[i] = i;
  std::sort(by_f.begin(), by_f.end(), [&](int a, int b) { return f[a] < f[b]; });
  std::sort(by_g.begin(), by_g.end(), [&](int a, int b) { return g[a] < g[b]; });

  double node_err = 0.0;
  double weight_err = 0.0;
  Eigen::MatrixXd exact = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    node_err = std::max(node_err, std::abs(r.quad_f.nodes[i] - f[by_f[i]]));
    node_err = std::max(node_err, std::abs(r.quad_g->nodes[i] - g[by_g[i]]));
    weight_err = std::max(weight_err, std::abs(r.quad_f.weights[i] - w[by_f[i]]));
    weight_err = std::max(weight_err, std::abs(r.quad_g->weights[i] - w[by_g[i]]));
    for (int j = 0; j < k; ++j) {
      if (by_f[i] == by_g[j]) exact(i, j) = w[by_f[i]];
    }
  }
  tally.check(prefix + "nodes", node_err, kIdentityTolerance);
  tally.check(prefix + "weights", weight_err, kIdentityTolerance);
  const auto s = projection(r.quad_f, *r.quad_g, r.grams);
  tally.check(prefix + "value_exact", scaled_diff(value_correlation(r.quad_f, *r.quad_g, s).w, exact),
              kIdentityTolerance);
}

void check_rank_deficient(Tally& tally) {
  const auto samples =
      SampleSet::from_columns({-0.5, 0.25, 1.0}, {1.0, 1.0, 1.0}, {1.0, 3.0, 2.0}, {{0.0, -1.0, 5.0}});
  RunConfig config;
  config.n = 4;
  config.epsilon = 0.0;
  try {
    run_pipeline(config, samples);
    tally.record("rank_deficient/epsilon=0", false, "expected a conditioning error");
  } catch (const ConditioningError& e) {
    tally.record("rank_deficient/epsilon=0", e.effective_rank() == 3,
                 fmt::format("expected failure raised: {}", e.what()));
  }
  config.epsilon = 1e-12;
  const auto r = run_pipeline(config, samples);
  tally.record("rank_deficient/default_epsilon", r.quad_f.size() == 3,
               fmt::format("order capped at effective rank {}", r.quad_f.size()));
  const auto s = projection(r.quad_f, *r.quad_g, r.grams);
  const auto v = value_correlation(r.quad_f, *r.quad_g, s);
  tally.check("rank_deficient/value_total", std::abs(v.total() - 3.0) / 3.0, kSumRuleTolerance);
}

}  // namespace

int run_selftest(const std::filesystem::path& scenario_dir, std::ostream& out) {
  Tally tally(out);
  std::vector<std::filesystem::path> fixtures;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(scenario_dir, ec)) {
    if (entry.is_regular_file() && entry.path().extension() == ".scn") {
      fixtures.push_back(entry.path());
    }
  }
  std::sort(fixtures.begin(), fixtures.end());
  if (fixtures.empty()) {
    tally.record("fixtures", false, "no *.scn fixtures in " + scenario_dir.string());
    return tally.finish();
  }

  for (const auto& path : fixtures) {
    ScenarioSpec spec;
    SampleSet samples = SampleSet::from_columns({0.0}, {1.0}, {0.0}, std::nullopt);
    try {
      spec = load_scenario_file(path);
      samples = generate(spec);
    } catch (const Error& e) {
      tally.record("fixture " + path.string(), false, e.what());
      return tally.finish();
    }
    for (int n : {8, 12}) check_fixture(tally, spec, samples, n);
  }

  try {
    for (int k = 1; k <= 3; ++k) check_atoms(tally, k);
    check_rank_deficient(tally);
  } catch (const Error& e) {
    tally.record("closed_form", false, e.what());
  }
  return tally.finish();
}

}  // namespace lqjoint::cli
