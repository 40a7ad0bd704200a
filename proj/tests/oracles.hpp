#pragma once

// Independent numeric oracles for the tests. These deliberately avoid the
// library's own closed forms so that agreement is evidence, not tautology.

#include <cmath>
#include <functional>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a,
                      double b) {
  const double m = 0.5 * (a + b);
  return (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b));
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int depth = 30) {
  const double m = 0.5 * (a + b);
  const double whole = simpson(f, a, b);
  const double left = simpson(f, a, m);
  const double right = simpson(f, m, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, m, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, 0.5 * tol, depth - 1);
}

// Quadrature of E[c^(-U)] for U uniform on [-1, 1].
inline double uniform_mgf_quadrature(double c) {
  return adaptive_simpson(
      [c](double u) { return 0.5 * std::pow(c, -u); }, -1.0, 1.0, 1e-14);
}

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// P(sum of n iid uniform[0,1] < x), Irwin-Hall CDF by direct expansion.
inline double irwin_hall_cdf(int n, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= n) return 1.0;
  double factorial = 1.0;
  for (int i = 2; i <= n; ++i) factorial *= i;
  double sum = 0.0;
  double binom = 1.0;  // C(n, k)
  double sign = 1.0;
  for (int k = 0; k <= static_cast<int>(x); ++k) {
    sum += sign * binom * std::pow(x - k, n);
    sign = -sign;
    binom = binom * (n - k) / (k + 1);
  }
  return sum / factorial;
}

}  // namespace oracles
