#pragma once

#include "lqjoint/basis.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <vector>

namespace lqjoint {

struct SampleRecord {
  double x = 0.0;
  double weight = 1.0;
  double f = 0.0;
  std::optional<double> g;
};

// Weighted observations (x_l, w_l, f_l, g_l) of two processes. Immutable;
// every stored value is finite, weights are non-negative with a positive
// total. The g column is all-or-nothing.
class SampleSet {
 public:
  // Throws InputError (with the 1-based record number) on invalid data.
  static SampleSet from_records(std::span<const SampleRecord> records);
  static SampleSet from_columns(std::vector<double> x, std::vector<double> weight,
                                std::vector<double> f, std::optional<std::vector<double>> g);

  std::size_t size() const noexcept { return x_.size(); }
  bool has_g() const noexcept { return g_.has_value(); }

  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> weight() const noexcept { return weight_; }
  std::span<const double> f() const noexcept { return f_; }
  // Empty span when g is absent.
  std::span<const double> g() const noexcept {
    return g_ ? std::span<const double>(*g_) : std::span<const double>();
  }

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  double total_weight() const noexcept { return total_weight_; }

 private:
  SampleSet() = default;
  void validate();

  std::vector<double> x_;
  std::vector<double> weight_;
  std::vector<double> f_;
  std::optional<std::vector<double>> g_;
  double x_min_ = 0.0;
  double x_max_ = 0.0;
  double total_weight_ = 0.0;
};

// Domain map spanning the sample range. A single distinct x is accepted only
// for order 1 (identity map); otherwise ConditioningError with rank 1.
DomainMap domain_from_samples(const SampleSet& samples, int order);

// <Q_j|Q_k>, <Q_j|f|Q_k>, <Q_j|g|Q_k>, <Q_k> and <1> for j, k < n.
struct GramSet {
  int n = 0;
  BasisSpec basis;
  Eigen::MatrixXd gram;
  Eigen::MatrixXd gram_f;
  std::optional<Eigen::MatrixXd> gram_g;
  Eigen::VectorXd moments;
  double total_measure = 0.0;

  bool has_g() const noexcept { return gram_g.has_value(); }
  // Throws ConfigError when g is absent.
  const Eigen::MatrixXd& require_g() const;
};

// <Q_m>, <f Q_m>, <g Q_m> for m = 0 .. 2n-1.
struct MomentSet {
  int n = 0;
  BasisSpec basis;
  Eigen::VectorXd mu;
  Eigen::VectorXd mu_f;
  std::optional<Eigen::VectorXd> mu_g;
};

// Direct sample sums over the upper triangle, mirrored. Sequential in sample
// order, so results are run-to-run identical.
GramSet accumulate_grams(const SampleSet& samples, const BasisSpec& basis, int n);

// Requires basis.size >= 2n.
MomentSet moments_from_samples(const SampleSet& samples, const BasisSpec& basis, int n);

// Builds the Gram matrices from moments with the basis multiplication rule.
// Throws RangeError if some product Q_j Q_k needs a moment beyond the set.
GramSet grams_from_moments(const MomentSet& moments, int n);

}  // namespace lqjoint
