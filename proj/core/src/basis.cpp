#include "lqjoint/basis.hpp"

#include "lqjoint/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

namespace lqjoint {

std::string_view to_string(BasisFamily family) {
  switch (family) {
    case BasisFamily::Chebyshev: return "chebyshev";
    case BasisFamily::Legendre: return "legendre";
    case BasisFamily::Monomial: return "monomial";
  }
  return "unknown";
}

BasisFamily parse_basis_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "chebyshev") return BasisFamily::Chebyshev;
  if (lower == "legendre") return BasisFamily::Legendre;
  if (lower == "monomial") return BasisFamily::Monomial;
  throw ConfigError("unknown basis family '" + std::string(name) + "'");
}

DomainMap::DomainMap(double x_min, double x_max)
    : x_min_(x_min), x_max_(x_max), identity_(false) {
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
    throw ConfigError("domain requires finite x_min < x_max, got [" + std::to_string(x_min) +
                      ", " + std::to_string(x_max) + "]");
  }
}

void BasisSpec::validate() const {
  if (size < 1) throw ConfigError("basis size must be at least 1");
}

bool same_basis_functions(const BasisSpec& a, const BasisSpec& b) noexcept {
  return a.family == b.family && a.domain == b.domain;
}

void evaluate_into(const BasisSpec& spec, double x, double* out) noexcept {
  const double t = spec.domain.to_unit(x);
  const int n = spec.size;
  out[0] = 1.0;
  if (n == 1) return;
  out[1] = t;
  switch (spec.family) {
    case BasisFamily::Chebyshev:
      for (int k = 1; k + 1 < n; ++k) out[k + 1] = 2.0 * t * out[k] - out[k - 1];
      break;
    case BasisFamily::Legendre:
      // (k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}
      for (int k = 1; k + 1 < n; ++k) {
        out[k + 1] = ((2.0 * k + 1.0) * t * out[k] - k * out[k - 1]) / (k + 1.0);
      }
      break;
    case BasisFamily::Monomial:
      for (int k = 1; k + 1 < n; ++k) out[k + 1] = t * out[k];
      break;
  }
}

Eigen::VectorXd evaluate_all(const BasisSpec& spec, double x) {
  spec.validate();
  if (!std::isfinite(x)) throw InputError("basis evaluation at non-finite x");
  Eigen::VectorXd values(spec.size);
  evaluate_into(spec, x, values.data());
  return values;
}

namespace {

// A_r = (2r-1)!! / r!, the Adams-Neumann weight.
double adams_weight(int r) {
  double a = 1.0;
  for (int s = 1; s <= r; ++s) a *= (2.0 * s - 1.0) / s;
  return a;
}

std::vector<ExpansionTerm> legendre_product(int j, int k) {
  const int lo = std::min(j, k);
  const int hi = std::max(j, k);
  std::vector<ExpansionTerm> terms;
  terms.reserve(lo + 1);
  // P_lo P_hi = sum_r A_{lo-r} A_r A_{hi-r} / A_{lo+hi-r}
  //             * (2(lo+hi) - 4r + 1) / (2(lo+hi) - 2r + 1) * P_{lo+hi-2r}
  for (int r = lo; r >= 0; --r) {
    const int degree = lo + hi - 2 * r;
    const double c = adams_weight(lo - r) * adams_weight(r) * adams_weight(hi - r) /
                     adams_weight(lo + hi - r) * (2.0 * (lo + hi) - 4.0 * r + 1.0) /
                     (2.0 * (lo + hi) - 2.0 * r + 1.0);
    terms.push_back({degree, c});
  }
  return terms;
}

}  // namespace

std::vector<ExpansionTerm> product_expansion(const BasisSpec& spec, int j, int k) {
  spec.validate();
  if (j < 0 || k < 0 || j >= spec.size || k >= spec.size) {
    throw RangeError("product_expansion index (" + std::to_string(j) + ", " + std::to_string(k) +
                     ") outside basis of size " + std::to_string(spec.size));
  }
  if (j == 0 || k == 0) return {{j + k, 1.0}};
  switch (spec.family) {
    case BasisFamily::Chebyshev: {
      const int diff = std::abs(j - k);
      if (diff == 0) return {{0, 0.5}, {j + k, 0.5}};
      return {{diff, 0.5}, {j + k, 0.5}};
    }
    case BasisFamily::Legendre:
      return legendre_product(j, k);
    case BasisFamily::Monomial:
      return {{j + k, 1.0}};
  }
  return {};
}

}  // namespace lqjoint
