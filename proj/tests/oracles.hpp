// Copyright (c) 2026 The recap authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Independent reference values for the test suites. Nothing here calls into the library.

#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/factorials.hpp>

namespace oracle {

using complex = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

/// Adaptive Gauss-Kronrod on [a, b].
inline double integrate(const std::function<double(double)> &f, double a, double b,
                        double tol = 1e-13) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, tol);
}

inline complex integrate_complex(const std::function<complex(double)> &f, double a, double b,
                                 double tol = 1e-13) {
  const double re = integrate([&](double x) { return f(x).real(); }, a, b, tol);
  const double im = integrate([&](double x) { return f(x).imag(); }, a, b, tol);
  return {re, im};
}

/// Composite fixed-order Gauss-Legendre, for integrands too expensive to adapt on.
template <class F>
auto composite(F f, double a, double b, int panels) {
  using R = decltype(f(a));
  R sum{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    sum += boost::math::quadrature::gauss<double, 20>::integrate(f, a + p * h, a + (p + 1) * h);
  return sum;
}

/// \int_0^inf, robust to an integrable endpoint singularity at 0.
inline double integrate_half_line(const std::function<double(double)> &f) {
  boost::math::quadrature::tanh_sinh<double> head;
  boost::math::quadrature::exp_sinh<double> tail;
  auto g = [&](double t) {
    const double v = f(t);
    return std::isfinite(v) ? v : 0.0;
  };
  return head.integrate(g, 0.0, 1.0) + tail.integrate(g, 1.0, std::numeric_limits<double>::infinity());
}

/// H_n(x) = n! sum_m (-1)^m (2x)^{n-2m} / (m! (n-2m)!).
inline double hermite_monomial(int n, double x) {
  using boost::math::factorial;
  long double sum = 0;
  for (int m = 0; 2 * m <= n; ++m)
    sum += (m % 2 ? -1.0L : 1.0L) * std::pow(2.0L * x, n - 2 * m) /
           (factorial<long double>(m) * factorial<long double>(n - 2 * m));
  return static_cast<double>(factorial<long double>(n) * sum);
}

/// L_a^{(l)}(x) = sum_j (-1)^j C(a+l, a-j) x^j / j!.
inline double laguerre_series(int a, double l, double x) {
  long double sum = 0, term_binom = 1;
  for (int j = 0; j <= a; ++j) {
    // C(a+l, a-j) for real l through the falling product
    term_binom = 1;
    for (int i = 1; i <= a - j; ++i)
      term_binom *= (l + j + i) / static_cast<long double>(i);
    sum += (j % 2 ? -1.0L : 1.0L) * term_binom * std::pow(static_cast<long double>(x), j) /
           boost::math::factorial<long double>(j);
  }
  return static_cast<double>(sum);
}

/// Normalized oscillator eigenfunction from the monomial Hermite expansion (n <= 30).
inline double phi(int n, double x) {
  const double norm = std::sqrt(std::pow(2.0, n) * boost::math::factorial<double>(n) * std::sqrt(pi));
  return hermite_monomial(n, x) * std::exp(-0.5 * x * x) / norm;
}

/// Radial l = 0 oscillator state normalized under r dr dphi: L_a(r^2) e^{-r^2/2} / sqrt(pi).
inline double radial0(int a, double r) {
  return laguerre_series(a, 0.0, r * r) * std::exp(-0.5 * r * r) / std::sqrt(pi);
}

/// Free evolution of phi_0 in closed form.
inline complex free_ground(double x, double t) {
  const complex s(1.0, t);
  return std::pow(pi, -0.25) / std::sqrt(s) * std::exp(-x * x / (2.0 * s));
}

inline double free_ground_survival(double t) { return 1.0 / std::sqrt(1.0 + 0.25 * t * t); }

/// Bound-state count of -psi''/2 - u exp(-x^2/2u) psi by zero-energy node counting
/// (Sturm oscillation) over both parities.
inline int shooting_count_1d(double u, double h = 1e-3) {
  const double X = 12.0 * std::sqrt(u);
  auto V = [u](double x) { return -u * std::exp(-x * x / (2.0 * u)); };
  int total = 0;
  for (int parity = 0; parity < 2; ++parity) {
    double y = parity ? 0.0 : 1.0, p = parity ? 1.0 : 0.0;
    int nodes = 0;
    for (double x = 0.0; x < X; x += h) {
      auto f = [&](double xx, double yy) { return 2.0 * V(xx) * yy; };
      const double k1y = p, k1p = f(x, y);
      const double k2y = p + 0.5 * h * k1p, k2p = f(x + 0.5 * h, y + 0.5 * h * k1y);
      const double k3y = p + 0.5 * h * k2p, k3p = f(x + 0.5 * h, y + 0.5 * h * k2y);
      const double k4y = p + h * k3p, k4p = f(x + h, y + h * k3y);
      const double y_next = y + h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
      p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
      if ((y > 0 && y_next <= 0) || (y < 0 && y_next >= 0))
        ++nodes;
      y = y_next;
    }
    // outside the well the solution is a + b x
    if (y * p < 0)
      ++nodes;
    total += nodes;
  }
  return total;
}

/// Same count for the l = 0 radial problem in 2D; outside the well psi = a + b ln r.
inline int shooting_count_radial(double u, double h = 1e-3) {
  const double R = 12.0 * std::sqrt(u);
  auto V = [u](double r) { return -u * std::exp(-r * r / (2.0 * u)); };
  auto f = [&](double r, double y, double p) { return 2.0 * V(r) * y - p / r; };
  double r = h;
  double y = 1.0 + 0.5 * V(0) * h * h, p = V(0) * h;
  int nodes = 0;
  for (; r < R; r += h) {
    const double k1y = p, k1p = f(r, y, p);
    const double k2y = p + 0.5 * h * k1p, k2p = f(r + 0.5 * h, y + 0.5 * h * k1y, p + 0.5 * h * k1p);
    const double k3y = p + 0.5 * h * k2p, k3p = f(r + 0.5 * h, y + 0.5 * h * k2y, p + 0.5 * h * k2p);
    const double k4y = p + h * k3p, k4p = f(r + h, y + h * k3y, p + h * k3p);
    const double y_next = y + h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y);
    p += h / 6.0 * (k1p + 2 * k2p + 2 * k3p + k4p);
    if ((y > 0 && y_next <= 0) || (y < 0 && y_next >= 0))
      ++nodes;
    y = y_next;
  }
  const double b = r * p, a = y - b * std::log(r);
  if (b != 0 && -a / b > std::log(r))
    ++nodes;
  return nodes;
}

/// Z_N / Z by direct summation of the geometric series.
inline double partition_fraction(double beta_hbar_omega, int N) {
  long double kept = 0, total = 0;
  for (int n = 0; n < 100000; ++n) {
    const long double w = std::exp(-static_cast<long double>(beta_hbar_omega) * n);
    total += w;
    if (n <= N)
      kept += w;
    if (w < 1e-30L)
      break;
  }
  return static_cast<double>(kept / total);
}

} // namespace oracle
