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

#pragma once

#include <complex>
#include <limits>
#include <span>

/// Orthogonal polynomials, harmonic-oscillator eigenfunctions and the closed-form
/// Gaussian-weighted integrals the basis matrix elements are assembled from.
namespace recap::specfun {

inline constexpr int max_order = 512;

/// Hermite / 1D oscillator order n, 0 <= n <= max_order.
class HermiteIndex {
public:
  explicit HermiteIndex(int n);
  int value() const noexcept { return n_; }

private:
  int n_;
};

/// 2D oscillator state (n, l): n - |l| even and non-negative; alpha = (n - |l|) / 2.
class Radial2DIndex {
public:
  Radial2DIndex(int n, int l);
  static Radial2DIndex from_alpha(int alpha, int l) { return {2 * alpha + (l < 0 ? -l : l), l}; }

  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int alpha() const noexcept { return (n_ - (l_ < 0 ? -l_ : l_)) / 2; }

private:
  int n_;
  int l_;
};

/// Value and sign of a quantity too large for a double, |v| = exp(log_abs).
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  double value() const noexcept;
};

/// Physicists' Hermite polynomial H_n(x).
double hermite(HermiteIndex n, double x);

/// Normalized 1D oscillator eigenfunction phi_n(x) = (2^n n! sqrt(pi))^{-1/2} H_n(x) e^{-x^2/2}.
double ho_wavefunction_1d(HermiteIndex n, double x);

/// phi_0(x) .. phi_{out.size()-1}(x) in one recurrence sweep.
void ho_wavefunctions_1d(double x, std::span<double> out);

/// Generalized Laguerre polynomial L_alpha^{(l)}(x).
double generalized_laguerre(int alpha, double l, double x);

/// Radial factor of the 2D oscillator state, including the 1/sqrt(pi) from the angular
/// normalization: psi_{n,l}(r, phi) = ho_radial_2d(alpha, |l|, r) e^{i l phi}.
double ho_radial_2d(int alpha, int abs_l, double r);

/// Radial factors for alpha = 0 .. out.size()-1 in one sweep.
void ho_radial_2d(double r, int abs_l, std::span<double> out);

/// Normalized under r dr dphi.
std::complex<double> ho_wavefunction_2d(Radial2DIndex idx, double r, double phi);

/// Rising factorial (a)_k = a (a+1) ... (a+k-1); (a)_0 = 1.
double pochhammer(double a, int k);
SignedLog log_pochhammer(double a, int k);

/// \int e^{-a x^2} H_n(x) H_m(x) dx over the real line, a > 0.
///
/// Summed term by term in the log domain, in a same-sign form obtained from the Hermite
/// multiplication theorem. Exactly 0 for odd n + m. The result itself overflows a double once
/// sqrt(pi) 2^n n! does (n around 150); use hermite_function_overlap for large orders.
double hermite_gauss_integral(int n, int m, double a);
SignedLog hermite_gauss_integral_log(int n, int m, double a);

/// The same integral from the alternating ((1-a)/a)-power series. Loses accuracy to cancellation
/// once |1 - a| / a is not small and the orders are high.
double hermite_gauss_series(int n, int m, double a);

/// \int phi_n(x) phi_m(x) e^{-(a-1) x^2} dx: the normalized form of
/// hermite_gauss_integral, finite for every n, m <= max_order.
double hermite_function_overlap(int n, int m, double a);

/// One Laguerre factor L_degree^{(order)}(scale * t) of the integrand below.
struct LaguerreFactor {
  int degree = 0;
  double order = 0.0;
  double scale = 1.0;
};

/// \int_0^inf t^{exponent-1} e^{-decay t} L_m^{lambda}(a t) L_n^{beta}(b t) dt.
///
/// Dispatches to laguerre_overlap_positive when the weight is the orthogonality weight of
/// both factors (lambda = beta = exponent - 1) and both scales lie in (0, decay]; that
/// form sums only non-negative terms. Everything else goes through the terminating double
/// series, which cancels catastrophically for degrees beyond ~15.
double laguerre_gauss_integral(double exponent, double decay, LaguerreFactor first,
                               LaguerreFactor second);

/// The Pochhammer double series, evaluated term by term in the log domain.
double laguerre_gauss_series(double exponent, double decay, LaguerreFactor first,
                             LaguerreFactor second);

/// Same integral for lambda = beta = exponent - 1 via the Laguerre multiplication theorem.
double laguerre_overlap_positive(double exponent, double decay, LaguerreFactor first,
                                 LaguerreFactor second);

/// \int_0^inf x^l e^{-decay x} Lhat_{a1}^{(l)}(x) Lhat_{a2}^{(l)}(x) dx with the
/// orthonormalized Lhat_a = sqrt(a! / (a+l)!) L_a. Equals delta at decay = 1.
double laguerre_function_overlap(int alpha1, int alpha2, int l, double decay);

} // namespace recap::specfun
