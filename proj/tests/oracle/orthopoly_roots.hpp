#pragma once

// Roots of the degree-n monic orthogonal polynomial of a discrete measure,
// found by sign-change scanning and bisection. Test-only oracle for the
// Gauss reduction of the quadrature with f(x) = x.

#include <cmath>
#include <vector>

namespace oracle {

// Monic p_n(x) = x^n + sum_k c_k x^k with <p_n x^j> = 0 for j < n. The Hankel
// system is solved by Gaussian elimination with partial pivoting.
inline std::vector<double> monic_orthogonal(const std::vector<double>& x,
                                            const std::vector<double>& w, int n) {
  std::vector<double> mu(2 * n, 0.0);
  for (std::size_t l = 0; l < x.size(); ++l)
    for (int m = 0; m < 2 * n; ++m) mu[m] += w[l] * std::pow(x[l], m);
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1));
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) a[j][k] = mu[j + k];
    a[j][n] = -mu[j + n];
  }
  for (int c = 0; c < n; ++c) {
    int pivot = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[pivot][c])) pivot = r;
    std::swap(a[c], a[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const double factor = a[r][c] / a[c][c];
      for (int k = c; k <= n; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  std::vector<double> coeffs(n + 1, 1.0);
  for (int k = 0; k < n; ++k) coeffs[k] = a[k][n] / a[k][k];
  return coeffs;  // coeffs[k] multiplies x^k; coeffs[n] == 1
}

inline double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

inline std::vector<double> roots_in(const std::vector<double>& c, double lo, double hi,
                                    int grid = 200000) {
  std::vector<double> roots;
  double prev_x = lo;
  double prev_v = horner(c, lo);
  for (int i = 1; i <= grid; ++i) {
    const double xi = lo + (hi - lo) * i / grid;
    const double vi = horner(c, xi);
    if ((prev_v < 0) != (vi < 0)) {
      double a = prev_x, b = xi, fa = prev_v;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        const double fm = horner(c, mid);
        if ((fm < 0) == (fa < 0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_x = xi;
    prev_v = vi;
  }
  return roots;
}

}  // namespace oracle
