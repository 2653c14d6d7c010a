#pragma once

#include <Eigen/Core>

#include <string>
#include <string_view>
#include <vector>

namespace lqjoint {

enum class BasisFamily { Chebyshev, Legendre, Monomial };

std::string_view to_string(BasisFamily family);
// Accepts "chebyshev", "legendre", "monomial" (case-insensitive).
BasisFamily parse_basis_family(std::string_view name);

// Affine map of the sample range [x_min, x_max] onto t in [-1, 1].
class DomainMap {
 public:
  // Identity map (t = x).
  DomainMap() = default;
  // Throws ConfigError unless x_min < x_max and both are finite.
  DomainMap(double x_min, double x_max);

  static DomainMap identity() { return DomainMap(); }

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  bool is_identity() const noexcept { return identity_; }

  double to_unit(double x) const noexcept {
    return identity_ ? x : (2.0 * x - x_min_ - x_max_) / (x_max_ - x_min_);
  }

  friend bool operator==(const DomainMap&, const DomainMap&) = default;

 private:
  double x_min_ = -1.0;
  double x_max_ = 1.0;
  bool identity_ = true;
};

struct BasisSpec {
  BasisFamily family = BasisFamily::Chebyshev;
  int size = 1;
  DomainMap domain;

  // Throws ConfigError if size < 1.
  void validate() const;

  friend bool operator==(const BasisSpec&, const BasisSpec&) = default;
};

// Same family and domain; sizes may differ.
bool same_basis_functions(const BasisSpec& a, const BasisSpec& b) noexcept;

// [Q_0(x), ..., Q_{size-1}(x)] by the family's three-term recurrence on the
// mapped variable. Throws InputError for non-finite x.
Eigen::VectorXd evaluate_all(const BasisSpec& spec, double x);

// Same, writing into a preallocated buffer of length spec.size. No checks;
// used by the accumulation loops.
void evaluate_into(const BasisSpec& spec, double x, double* out) noexcept;

struct ExpansionTerm {
  int index;
  double coefficient;

  friend bool operator==(const ExpansionTerm&, const ExpansionTerm&) = default;
};

// Coefficients c_m with Q_j Q_k = sum_m c_m Q_m, ascending in m, zero terms
// omitted. The result may reference indices up to j + k, beyond spec.size;
// consumers check that against their moment range. Throws RangeError if
// j or k is outside [0, spec.size).
std::vector<ExpansionTerm> product_expansion(const BasisSpec& spec, int j, int k);

}  // namespace lqjoint
