#include "doctest.h"

#include "lqjoint/basis.hpp"
#include "lqjoint/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace lqjoint;

namespace {

// Explicit power-sum forms, independent of the recurrences.
double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double legendre_direct(int n, double t) {
  double sum = 0.0;
  for (int k = 0; 2 * k <= n; ++k) {
    sum += (k % 2 ? -1.0 : 1.0) * binomial(n, k) * binomial(2 * n - 2 * k, n) * std::pow(t, n - 2 * k);
  }
  return sum / std::pow(2.0, n);
}

double chebyshev_direct(int n, double t) {
  if (n == 0) return 1.0;
  double sum = 0.0;
  for (int k = 0; 2 * k <= n; ++k) {
    // n/2 * (n-k-1)! / (k! (n-2k)!) * (2t)^(n-2k)
    const double c = 0.5 * n * std::tgamma(n - k) / (std::tgamma(k + 1) * std::tgamma(n - 2 * k + 1));
    sum += (k % 2 ? -1.0 : 1.0) * c * std::pow(2.0 * t, n - 2 * k);
  }
  return sum;
}

double direct(BasisFamily family, int k, double t) {
  switch (family) {
    case BasisFamily::Chebyshev: return chebyshev_direct(k, t);
    case BasisFamily::Legendre: return legendre_direct(k, t);
    case BasisFamily::Monomial: return std::pow(t, k);
  }
  return 0.0;
}

constexpr BasisFamily kFamilies[] = {BasisFamily::Chebyshev, BasisFamily::Legendre,
                                     BasisFamily::Monomial};

}  // namespace

TEST_CASE("domain map sends the range ends to -1 and +1") {
  const double eps = std::numeric_limits<double>::epsilon();
  for (auto [lo, hi] : {std::pair{0.0, 2.0}, {-3.5, 1e4}, {1e-3, 1.1e-3}, {-7.0, -2.0}}) {
    const DomainMap map(lo, hi);
    CHECK(std::abs(map.to_unit(lo) + 1.0) <= 4 * eps);
    CHECK(std::abs(map.to_unit(hi) - 1.0) <= 4 * eps);
  }
  CHECK_THROWS_AS(DomainMap(1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(DomainMap(2.0, 1.0), ConfigError);
  CHECK_THROWS_AS(DomainMap(0.0, INFINITY), ConfigError);
  CHECK(DomainMap::identity().to_unit(3.25) == 3.25);
}

TEST_CASE("Chebyshev values at 0.5 follow the period-six pattern") {
  const BasisSpec spec{BasisFamily::Chebyshev, 13, DomainMap(-1.0, 1.0)};
  const auto q = evaluate_all(spec, 0.5);
  const double pattern[] = {1.0, 0.5, -0.5, -1.0, -0.5, 0.5};
  for (int k = 0; k < 13; ++k) CHECK(q[k] == doctest::Approx(pattern[k % 6]).epsilon(1e-14));
}

TEST_CASE("Q_0 is the constant one for every family and domain") {
  for (auto family : kFamilies) {
    for (double x : {-4.0, 0.0, 0.3, 17.0}) {
      const BasisSpec spec{family, 5, DomainMap(-4.0, 17.0)};
      CHECK(evaluate_all(spec, x)[0] == 1.0);
    }
  }
}

TEST_CASE("monomials at the right end of a mapped domain are all one") {
  const BasisSpec spec{BasisFamily::Monomial, 7, DomainMap(0.0, 2.0)};
  const auto q = evaluate_all(spec, 2.0);
  for (int k = 0; k < 7; ++k) CHECK(q[k] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("non-finite abscissa is an input error") {
  const BasisSpec spec{BasisFamily::Legendre, 3, DomainMap()};
  CHECK_THROWS_AS(evaluate_all(spec, NAN), InputError);
  CHECK_THROWS_AS(evaluate_all(spec, INFINITY), InputError);
}

TEST_CASE("recurrences match explicit polynomials at random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> in_domain(-3.0, 5.0);
  for (auto family : kFamilies) {
    const BasisSpec spec{family, 10, DomainMap(-3.0, 5.0)};
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double x = in_domain(rng);
      const double t = spec.domain.to_unit(x);
      const auto q = evaluate_all(spec, x);
      for (int k = 0; k < 10; ++k) {
        const double want = direct(family, k, t);
        worst = std::max(worst, std::abs(q[k] - want) / std::max(1.0, std::abs(want)));
      }
    }
    CAPTURE(to_string(family));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("product expansion examples") {
  const BasisSpec cheb{BasisFamily::Chebyshev, 6, DomainMap()};
  CHECK(product_expansion(cheb, 1, 1) == std::vector<ExpansionTerm>{{0, 0.5}, {2, 0.5}});
  for (auto family : kFamilies) {
    const BasisSpec spec{family, 6, DomainMap()};
    CHECK(product_expansion(spec, 0, 5) == std::vector<ExpansionTerm>{{5, 1.0}});
  }
  const BasisSpec mono{BasisFamily::Monomial, 6, DomainMap()};
  CHECK(product_expansion(mono, 2, 3) == std::vector<ExpansionTerm>{{5, 1.0}});
  // x^2 = (2 P_2 + P_0) / 3
  const BasisSpec leg{BasisFamily::Legendre, 6, DomainMap()};
  const auto p11 = product_expansion(leg, 1, 1);
  REQUIRE(p11.size() == 2);
  CHECK(p11[0].index == 0);
  CHECK(p11[0].coefficient == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(p11[1].index == 2);
  CHECK(p11[1].coefficient == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("product expansion index outside the basis is a range error") {
  const BasisSpec spec{BasisFamily::Chebyshev, 4, DomainMap()};
  CHECK_THROWS_AS(product_expansion(spec, 4, 0), RangeError);
  CHECK_THROWS_AS(product_expansion(spec, -1, 2), RangeError);
}

TEST_CASE("product expansion reconstructs Q_j Q_k") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> in_domain(-2.0, 6.0);
  for (auto family : kFamilies) {
    const int size = 10;
    const BasisSpec spec{family, size, DomainMap(-2.0, 6.0)};
    BasisSpec wide = spec;
    wide.size = 2 * size - 1;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const double x = in_domain(rng);
      const auto q = evaluate_all(wide, x);
      for (int j = 0; j < size; ++j) {
        for (int k = 0; k < size; ++k) {
          double sum = 0.0;
          for (const auto& term : product_expansion(spec, j, k)) sum += term.coefficient * q[term.index];
          const double want = q[j] * q[k];
          worst = std::max(worst, std::abs(sum - want) / std::max(1.0, std::abs(want)));
        }
      }
    }
    CAPTURE(to_string(family));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("basis family names round-trip") {
  for (auto family : kFamilies) CHECK(parse_basis_family(to_string(family)) == family);
  CHECK(parse_basis_family("Chebyshev") == BasisFamily::Chebyshev);
  CHECK_THROWS_AS(parse_basis_family("hermite"), ConfigError);
}
