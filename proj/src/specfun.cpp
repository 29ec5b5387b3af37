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

#include "recap/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "recap/error.hpp"

namespace recap::specfun {

namespace {

constexpr double log_pi = 1.1447298858494002; // ln(pi)
constexpr double rescale_threshold = 1e150;

void check_order(int n) {
  if (n < 0)
    throw ContractError("negative polynomial order " + std::to_string(n));
  if (n > max_order)
    throw CapabilityError("polynomial order " + std::to_string(n) + " exceeds ceiling " +
                          std::to_string(max_order));
}

double lfact(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

/// Accumulates signed terms given as (log|t|, sign) without overflow.
class SignedLogSum {
public:
  void add(double log_abs, int sign) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity())
      return;
    terms_.push_back({log_abs, sign});
  }

  SignedLog total() const {
    if (terms_.empty())
      return {};
    double peak = terms_.front().log_abs;
    for (const auto &t : terms_)
      peak = std::max(peak, t.log_abs);
    long double acc = 0.0L;
    for (const auto &t : terms_)
      acc += t.sign * std::exp(static_cast<long double>(t.log_abs - peak));
    if (acc == 0.0L)
      return {};
    return {peak + static_cast<double>(std::log(std::fabs(acc))), acc > 0 ? 1 : -1};
  }

private:
  std::vector<SignedLog> terms_;
};

/// log|x^k| and sign, with 0^0 = 1.
SignedLog log_power(double x, int k) {
  if (k == 0)
    return {0.0, 1};
  if (x == 0.0)
    return {};
  return {k * std::log(std::fabs(x)), (x < 0.0 && (k % 2)) ? -1 : 1};
}

bool is_integral(double a) { return std::floor(a) == a; }

} // namespace

HermiteIndex::HermiteIndex(int n) : n_(n) { check_order(n); }

Radial2DIndex::Radial2DIndex(int n, int l) : n_(n), l_(l) {
  const int abs_l = l < 0 ? -l : l;
  if (n < 0 || abs_l > n || (n - abs_l) % 2 != 0)
    throw ContractError("invalid 2D oscillator index (n=" + std::to_string(n) +
                        ", l=" + std::to_string(l) + ")");
  check_order(n);
}

double SignedLog::value() const noexcept {
  return sign == 0 ? 0.0 : sign * std::exp(log_abs);
}

double hermite(HermiteIndex index, double x) {
  const int n = index.value();
  double prev = 1.0;
  if (n == 0)
    return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void ho_wavefunctions_1d(double x, std::span<double> out) {
  if (out.empty())
    return;
  check_order(static_cast<int>(out.size()) - 1);
  // Run the normalized recurrence on a rescaled seed so that phi_0 underflowing far
  // outside the classically allowed region does not zero the higher orders.
  double log_scale = -0.5 * x * x - 0.25 * log_pi;
  double prev = 0.0;
  double cur = 1.0;
  std::vector<double> log_of(out.size(), 0.0);
  out[0] = cur;
  log_of[0] = log_scale;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double kd = static_cast<double>(k);
    const double next = std::sqrt(2.0 / (kd + 1.0)) * x * cur - std::sqrt(kd / (kd + 1.0)) * prev;
    prev = cur;
    cur = next;
    if (std::fabs(cur) > rescale_threshold) {
      prev /= rescale_threshold;
      cur /= rescale_threshold;
      log_scale += std::log(rescale_threshold);
    }
    out[k + 1] = cur;
    log_of[k + 1] = log_scale;
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = out[k] == 0.0 ? 0.0 : out[k] * std::exp(log_of[k]);
}

double ho_wavefunction_1d(HermiteIndex n, double x) {
  std::vector<double> all(static_cast<std::size_t>(n.value()) + 1);
  ho_wavefunctions_1d(x, all);
  return all.back();
}

double generalized_laguerre(int alpha, double l, double x) {
  check_order(alpha);
  double prev = 1.0;
  if (alpha == 0)
    return prev;
  double cur = 1.0 + l - x;
  for (int k = 1; k < alpha; ++k) {
    const double next = ((2.0 * k + 1.0 + l - x) * cur - (k + l) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void ho_radial_2d(double r, int abs_l, std::span<double> out) {
  if (out.empty())
    return;
  if (abs_l < 0)
    throw ContractError("ho_radial_2d expects |l|");
  check_order(static_cast<int>(2 * (out.size() - 1)) + abs_l);
  const double x = r * r;
  const double l = abs_l;
  if (abs_l > 0 && x == 0.0) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  // f_a = sqrt(a!/(a+l)!) e^{-x/2} x^{l/2} L_a^l(x) / sqrt(pi), normalized recurrence.
  double log_scale = -0.5 * x + (abs_l > 0 ? 0.5 * l * std::log(x) : 0.0) - 0.5 * lfact(abs_l) -
                     0.5 * log_pi;
  double prev = 0.0;
  double cur = 1.0;
  std::vector<double> log_of(out.size(), 0.0);
  out[0] = cur;
  log_of[0] = log_scale;
  for (std::size_t k = 0; k + 1 < out.size(); ++k) {
    const double a = static_cast<double>(k);
    const double next =
        ((2.0 * a + l + 1.0 - x) * cur - std::sqrt(a * (a + l)) * prev) / std::sqrt((a + 1.0) * (a + l + 1.0));
    prev = cur;
    cur = next;
    if (std::fabs(cur) > rescale_threshold) {
      prev /= rescale_threshold;
      cur /= rescale_threshold;
      log_scale += std::log(rescale_threshold);
    }
    out[k + 1] = cur;
    log_of[k + 1] = log_scale;
  }
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = out[k] == 0.0 ? 0.0 : out[k] * std::exp(log_of[k]);
}

double ho_radial_2d(int alpha, int abs_l, double r) {
  if (alpha < 0)
    throw ContractError("negative radial quantum number");
  std::vector<double> all(static_cast<std::size_t>(alpha) + 1);
  ho_radial_2d(r, abs_l, all);
  return all.back();
}

std::complex<double> ho_wavefunction_2d(Radial2DIndex idx, double r, double phi) {
  const int abs_l = idx.l() < 0 ? -idx.l() : idx.l();
  const double radial = ho_radial_2d(idx.alpha(), abs_l, r);
  return radial * std::polar(1.0, idx.l() * phi);
}

double pochhammer(double a, int k) {
  if (k < 0)
    throw ContractError("pochhammer: negative k");
  if (is_integral(a)) {
    // Integer path: exact while the product fits in the long double mantissa.
    long double prod = 1.0L;
    for (int i = 0; i < k; ++i) {
      const long double f = static_cast<long double>(a) + i;
      if (f == 0.0L)
        return 0.0;
      prod *= f;
    }
    return static_cast<double>(prod);
  }
  double prod = 1.0;
  for (int i = 0; i < k; ++i)
    prod *= a + i;
  return prod;
}

SignedLog log_pochhammer(double a, int k) {
  if (k < 0)
    throw ContractError("pochhammer: negative k");
  if (k == 0)
    return {0.0, 1};
  if (a > 0.0)
    return {std::lgamma(a + k) - std::lgamma(a), 1};
  double log_abs = 0.0;
  int sign = 1;
  for (int i = 0; i < k; ++i) {
    const double f = a + i;
    if (f == 0.0)
      return {};
    log_abs += std::log(std::fabs(f));
    if (f < 0.0)
      sign = -sign;
  }
  return {log_abs, sign};
}

namespace {

void check_hermite_args(int n, int m, double a) {
  if (!(a > 0.0))
    throw DivergentIntegralError("hermite_gauss_integral requires a > 0");
  check_order(n);
  check_order(m);
}

/// Terms of sqrt(pi/a) n! m! sum_k 2^k (n+m-2k)! / (k! (n-k)! (m-k)! ((n+m)/2-k)!) ((1-a)/a)^{(n+m)/2-k},
/// each shifted by `log_offset`.
SignedLog hermite_series_log(int n, int m, double a, double log_offset) {
  check_hermite_args(n, m, a);
  if ((n + m) % 2 != 0)
    return {};
  const double ratio = (1.0 - a) / a;
  const int half = (n + m) / 2;
  const double base = 0.5 * (log_pi - std::log(a)) + lfact(n) + lfact(m) + log_offset;
  SignedLogSum sum;
  for (int k = 0; k <= std::min(n, m); ++k) {
    const int p = half - k;
    const SignedLog power = log_power(ratio, p);
    if (power.sign == 0)
      continue;
    const double log_abs = base + k * std::numbers::ln2 + lfact(n + m - 2 * k) - lfact(k) -
                           lfact(n - k) - lfact(m - k) - lfact(p) + power.log_abs;
    sum.add(log_abs, power.sign);
  }
  return sum.total();
}

/// Same integral after y = sqrt(a) x and H_n(y / sqrt(a)) expanded by the multiplication theorem:
/// sqrt(pi/a) n! m! sum_p 2^p a^{-p} ((1-a)/a)^{(n+m)/2-p} / (((n-p)/2)! ((m-p)/2)! p!).
/// Every term carries the same sign.
SignedLog hermite_positive_log(int n, int m, double a, double log_offset) {
  check_hermite_args(n, m, a);
  if ((n + m) % 2 != 0)
    return {};
  const double ratio = (1.0 - a) / a;
  const int half = (n + m) / 2;
  const double base = 0.5 * (log_pi - std::log(a)) + lfact(n) + lfact(m) + log_offset;
  SignedLogSum sum;
  for (int p = n % 2; p <= std::min(n, m); p += 2) {
    const SignedLog power = log_power(ratio, half - p);
    if (power.sign == 0)
      continue;
    const double log_abs = base + p * (std::numbers::ln2 - std::log(a)) + power.log_abs -
                           lfact((n - p) / 2) - lfact((m - p) / 2) - lfact(p);
    sum.add(log_abs, power.sign);
  }
  return sum.total();
}

} // namespace

SignedLog hermite_gauss_integral_log(int n, int m, double a) { return hermite_positive_log(n, m, a, 0.0); }

double hermite_gauss_integral(int n, int m, double a) { return hermite_gauss_integral_log(n, m, a).value(); }

double hermite_gauss_series(int n, int m, double a) { return hermite_series_log(n, m, a, 0.0).value(); }

double hermite_function_overlap(int n, int m, double a) {
  const double norm = -0.5 * ((n + m) * std::numbers::ln2 + lfact(n) + lfact(m) + log_pi);
  return hermite_positive_log(n, m, a, norm).value();
}

namespace {

void check_laguerre_args(double exponent, double decay, const LaguerreFactor &f1,
                         const LaguerreFactor &f2) {
  if (!(decay > 0.0))
    throw DivergentIntegralError("laguerre_gauss_integral requires decay p > 0");
  if (!(exponent > 0.0))
    throw DivergentIntegralError("laguerre_gauss_integral requires exponent a > 0");
  check_order(f1.degree);
  check_order(f2.degree);
}

} // namespace

double laguerre_gauss_series(double exponent, double decay, LaguerreFactor first,
                             LaguerreFactor second) {
  check_laguerre_args(exponent, decay, first, second);
  const int m = first.degree;
  const int n = second.degree;
  // Gamma(a)(lambda+1)_m / (lambda+1)_j is folded into (lambda+1+j)_{m-j}, and
  // Gamma(a)(a)_j(a+j)_k into Gamma(a+j+k), so no Pochhammer ever sits in a denominator.
  SignedLogSum sum;
  for (int j = 0; j <= m; ++j) {
    const SignedLog pj = log_pochhammer(first.order + 1.0 + j, m - j);
    const SignedLog rj = log_power(first.scale / decay, j);
    if (pj.sign == 0 || rj.sign == 0)
      continue;
    const double log_j = pj.log_abs - lfact(j) - lfact(m - j) + rj.log_abs;
    const int sign_j = pj.sign * rj.sign * ((j % 2) ? -1 : 1);
    for (int k = 0; k <= n; ++k) {
      const SignedLog pk = log_pochhammer(second.order + 1.0 + k, n - k);
      const SignedLog rk = log_power(second.scale / decay, k);
      if (pk.sign == 0 || rk.sign == 0)
        continue;
      const double log_k = pk.log_abs - lfact(k) - lfact(n - k) + rk.log_abs;
      const int sign_k = pk.sign * rk.sign * ((k % 2) ? -1 : 1);
      sum.add(log_j + log_k + std::lgamma(exponent + j + k), sign_j * sign_k);
    }
  }
  SignedLog total = sum.total();
  total.log_abs -= exponent * std::log(decay);
  return total.value();
}

namespace {

SignedLog overlap_positive_log(double exponent, double decay, LaguerreFactor first,
                               LaguerreFactor second) {
  check_laguerre_args(exponent, decay, first, second);
  const double l = first.order;
  if (std::fabs(second.order - l) > 1e-12 || std::fabs(exponent - 1.0 - l) > 1e-12 || l <= -1.0)
    throw ContractError("laguerre_overlap_positive requires lambda = beta = exponent - 1 > -1");
  const double mu_a = first.scale / decay;
  const double mu_b = second.scale / decay;
  if (mu_a < 0.0 || mu_a > 1.0 || mu_b < 0.0 || mu_b > 1.0)
    throw ContractError("laguerre_overlap_positive requires 0 <= scale <= decay");
  // L_m^l(mu y) = sum_j C(m+l, m-j) mu^j (1-mu)^{m-j} L_j^l(y), then orthogonality.
  const int m = first.degree;
  const int n = second.degree;
  SignedLogSum sum;
  for (int j = 0; j <= std::min(m, n); ++j) {
    const SignedLog pa = log_power(mu_a, j);
    const SignedLog pb = log_power(mu_b, j);
    const SignedLog qa = log_power(1.0 - mu_a, m - j);
    const SignedLog qb = log_power(1.0 - mu_b, n - j);
    if (pa.sign == 0 || pb.sign == 0 || qa.sign == 0 || qb.sign == 0)
      continue;
    const double binom_a = std::lgamma(m + l + 1.0) - lfact(m - j) - std::lgamma(j + l + 1.0);
    const double binom_b = std::lgamma(n + l + 1.0) - lfact(n - j) - std::lgamma(j + l + 1.0);
    const double norm = std::lgamma(j + l + 1.0) - lfact(j);
    sum.add(binom_a + binom_b + norm + pa.log_abs + pb.log_abs + qa.log_abs + qb.log_abs, 1);
  }
  SignedLog total = sum.total();
  total.log_abs -= exponent * std::log(decay);
  return total;
}

} // namespace

double laguerre_overlap_positive(double exponent, double decay, LaguerreFactor first,
                                 LaguerreFactor second) {
  return overlap_positive_log(exponent, decay, first, second).value();
}

double laguerre_gauss_integral(double exponent, double decay, LaguerreFactor first,
                               LaguerreFactor second) {
  const double l = first.order;
  const bool orthogonality_weight = std::fabs(second.order - l) <= 1e-12 &&
                                    std::fabs(exponent - 1.0 - l) <= 1e-12 && l > -1.0;
  const bool contracting = first.scale >= 0.0 && first.scale <= decay && second.scale >= 0.0 &&
                           second.scale <= decay;
  if (orthogonality_weight && contracting)
    return laguerre_overlap_positive(exponent, decay, first, second);
  return laguerre_gauss_series(exponent, decay, first, second);
}

double laguerre_function_overlap(int alpha1, int alpha2, int l, double decay) {
  if (l < 0)
    throw ContractError("laguerre_function_overlap expects |l|");
  if (!(decay >= 1.0))
    throw ContractError("laguerre_function_overlap requires decay >= 1");
  const double norm = 0.5 * (lfact(alpha1) + lfact(alpha2) - lfact(alpha1 + l) - lfact(alpha2 + l));
  SignedLog raw = overlap_positive_log(l + 1.0, decay, {alpha1, double(l), 1.0},
                                       {alpha2, double(l), 1.0});
  raw.log_abs += norm;
  return raw.value();
}

} // namespace recap::specfun
