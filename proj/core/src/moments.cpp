#include "lqjoint/moments.hpp"

#include "lqjoint/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lqjoint {

SampleSet SampleSet::from_records(std::span<const SampleRecord> records) {
  SampleSet set;
  const bool with_g = !records.empty() && records.front().g.has_value();
  set.x_.reserve(records.size());
  set.weight_.reserve(records.size());
  set.f_.reserve(records.size());
  if (with_g) set.g_.emplace().reserve(records.size());
  for (std::size_t l = 0; l < records.size(); ++l) {
    const auto& r = records[l];
    if (r.g.has_value() != with_g) {
      throw InputError("g column present in some records but not others", l + 1);
    }
    set.x_.push_back(r.x);
    set.weight_.push_back(r.weight);
    set.f_.push_back(r.f);
    if (with_g) set.g_->push_back(*r.g);
  }
  set.validate();
  return set;
}

SampleSet SampleSet::from_columns(std::vector<double> x, std::vector<double> weight,
                                  std::vector<double> f, std::optional<std::vector<double>> g) {
  if (weight.size() != x.size() || f.size() != x.size() || (g && g->size() != x.size())) {
    throw InputError("sample columns have different lengths");
  }
  SampleSet set;
  set.x_ = std::move(x);
  set.weight_ = std::move(weight);
  set.f_ = std::move(f);
  set.g_ = std::move(g);
  set.validate();
  return set;
}

void SampleSet::validate() {
  if (x_.empty()) throw InputError("sample set is empty");
  total_weight_ = 0.0;
  x_min_ = x_.front();
  x_max_ = x_.front();
  for (std::size_t l = 0; l < x_.size(); ++l) {
    const std::size_t record = l + 1;
    if (!std::isfinite(x_[l])) throw InputError("non-finite x", record);
    if (!std::isfinite(weight_[l])) throw InputError("non-finite weight", record);
    if (weight_[l] < 0.0) throw InputError("negative weight " + std::to_string(weight_[l]), record);
    if (!std::isfinite(f_[l])) throw InputError("non-finite f", record);
    if (g_ && !std::isfinite((*g_)[l])) throw InputError("non-finite g", record);
    total_weight_ += weight_[l];
    x_min_ = std::min(x_min_, x_[l]);
    x_max_ = std::max(x_max_, x_[l]);
  }
  if (!(total_weight_ > 0.0) || !std::isfinite(total_weight_)) {
    throw InputError("total weight must be positive and finite");
  }
}

DomainMap domain_from_samples(const SampleSet& samples, int order) {
  if (samples.x_min() < samples.x_max()) return DomainMap(samples.x_min(), samples.x_max());
  if (order <= 1) return DomainMap::identity();
  throw ConditioningError("all samples share one x value; order " + std::to_string(order) +
                              " needs at least " + std::to_string(order) + " distinct points",
                          1);
}

const Eigen::MatrixXd& GramSet::require_g() const {
  if (!gram_g) throw ConfigError("process g is not present in the data");
  return *gram_g;
}

namespace {

void check_order(const BasisSpec& basis, int n, int needed_size) {
  basis.validate();
  if (n < 1) throw ConfigError("quadrature order must be at least 1");
  if (basis.size < needed_size) {
    throw ConfigError("basis size " + std::to_string(basis.size) + " is smaller than the " +
                      std::to_string(needed_size) + " functions required");
  }
}

void mirror_upper(Eigen::MatrixXd& m) {
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    for (Eigen::Index k = j + 1; k < m.cols(); ++k) m(k, j) = m(j, k);
  }
}

void require_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) {
    throw InputError(std::string(what) + " is not finite; the process mean must be finite");
  }
}

}  // namespace

GramSet accumulate_grams(const SampleSet& samples, const BasisSpec& basis, int n) {
  check_order(basis, n, n);
  BasisSpec eval = basis;
  eval.size = n;

  GramSet out;
  out.n = n;
  out.basis = basis;
  out.gram = Eigen::MatrixXd::Zero(n, n);
  out.gram_f = Eigen::MatrixXd::Zero(n, n);
  if (samples.has_g()) out.gram_g = Eigen::MatrixXd::Zero(n, n);
  out.moments = Eigen::VectorXd::Zero(n);
  out.total_measure = 0.0;

  const auto xs = samples.x();
  const auto ws = samples.weight();
  const auto fs = samples.f();
  const auto gs = samples.g();
  std::vector<double> q(n);
  for (std::size_t l = 0; l < samples.size(); ++l) {
    const double w = ws[l];
    evaluate_into(eval, xs[l], q.data());
    for (int j = 0; j < n; ++j) {
      const double qw = q[j] * w;
      out.moments[j] += qw;
      for (int k = j; k < n; ++k) {
        const double term = qw * q[k];
        out.gram(j, k) += term;
        out.gram_f(j, k) += term * fs[l];
        if (out.gram_g) (*out.gram_g)(j, k) += term * gs[l];
      }
    }
    out.total_measure += w;
  }
  mirror_upper(out.gram);
  mirror_upper(out.gram_f);
  if (out.gram_g) mirror_upper(*out.gram_g);

  require_finite(out.gram_f, "<Q|f|Q>");
  if (out.gram_g) require_finite(*out.gram_g, "<Q|g|Q>");
  return out;
}

MomentSet moments_from_samples(const SampleSet& samples, const BasisSpec& basis, int n) {
  check_order(basis, n, 2 * n);
  const int count = 2 * n;
  BasisSpec eval = basis;
  eval.size = count;

  MomentSet out;
  out.n = n;
  out.basis = basis;
  out.mu = Eigen::VectorXd::Zero(count);
  out.mu_f = Eigen::VectorXd::Zero(count);
  if (samples.has_g()) out.mu_g = Eigen::VectorXd::Zero(count);

  const auto xs = samples.x();
  const auto ws = samples.weight();
  const auto fs = samples.f();
  const auto gs = samples.g();
  std::vector<double> q(count);
  for (std::size_t l = 0; l < samples.size(); ++l) {
    evaluate_into(eval, xs[l], q.data());
    for (int m = 0; m < count; ++m) {
      const double qw = q[m] * ws[l];
      out.mu[m] += qw;
      out.mu_f[m] += qw * fs[l];
      if (out.mu_g) (*out.mu_g)[m] += qw * gs[l];
    }
  }
  if (!out.mu_f.allFinite() || (out.mu_g && !out.mu_g->allFinite())) {
    throw InputError("process moments are not finite; the process mean must be finite");
  }
  return out;
}

namespace {

Eigen::MatrixXd contract(const BasisSpec& basis, const Eigen::VectorXd& mu, int n) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      double sum = 0.0;
      for (const auto& term : product_expansion(basis, j, k)) {
        if (term.index >= mu.size()) {
          throw RangeError("product Q_" + std::to_string(j) + " Q_" + std::to_string(k) +
                           " needs moment " + std::to_string(term.index) + " but only " +
                           std::to_string(mu.size()) + " are available");
        }
        sum += term.coefficient * mu[term.index];
      }
      out(j, k) = sum;
    }
  }
  mirror_upper(out);
  return out;
}

}  // namespace

GramSet grams_from_moments(const MomentSet& moments, int n) {
  if (n < 1) throw ConfigError("quadrature order must be at least 1");
  if (moments.mu.size() < n) {
    throw RangeError("moment set too short for order " + std::to_string(n));
  }
  // Products only need indices below n here; the moment count bounds the degree.
  BasisSpec product_basis = moments.basis;
  product_basis.size = std::max<int>(product_basis.size, n);

  GramSet out;
  out.n = n;
  out.basis = moments.basis;
  out.gram = contract(product_basis, moments.mu, n);
  out.gram_f = contract(product_basis, moments.mu_f, n);
  if (moments.mu_g) out.gram_g = contract(product_basis, *moments.mu_g, n);
  out.moments = moments.mu.head(n);
  out.total_measure = moments.mu[0];
  return out;
}

}  // namespace lqjoint
