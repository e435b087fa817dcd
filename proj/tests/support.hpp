#pragma once

// Shared helpers for the unit tests: seeded random data and exact cell
// averages of polynomials.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace cartweno::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240917);
  return gen;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

/// p(x) = sum c[k] x^k.
inline double poly_eval(const std::vector<double>& c, double x) {
  double s = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) s = s * x + *it;
  return s;
}

/// (1/(b-a)) * integral_a^b p(x) dx, exact.
inline double poly_average(const std::vector<double>& c, double a, double b) {
  double s = 0.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double e = static_cast<double>(k + 1);
    s += c[k] * (std::pow(b, e) - std::pow(a, e)) / e;
  }
  return s / (b - a);
}

inline std::vector<double> random_poly(int degree) {
  std::vector<double> c(static_cast<std::size_t>(degree) + 1);
  for (double& v : c) v = uniform(-1.0, 1.0);
  return c;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) / scale;
}

/// Dense Gaussian elimination with partial pivoting; a is n x n row-major.
inline std::vector<double> solve(std::vector<double> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t r = n; r-- > 0;) {
    double s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s -= a[r * n + k] * x[k];
    x[r] = s / a[r * n + r];
  }
  return x;
}

}  // namespace cartweno::test
