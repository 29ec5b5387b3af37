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

#include <cmath>
#include <numbers>
#include <vector>

#include "recap/error.hpp"
#include "recap/evolve.hpp"
#include "recap/specfun.hpp"

namespace recap::evolve {

std::optional<complex> free_kernel(double x, double x_prime, double dt) {
  if (dt == 0.0)
    return std::nullopt;
  const complex prefactor = std::sqrt(1.0 / complex(0.0, 2.0 * std::numbers::pi * dt));
  const double d = x - x_prime;
  return prefactor * std::polar(1.0, d * d / (2.0 * dt));
}

std::optional<complex> iho_kernel(double x, double x_prime, double dt, double omega) {
  if (dt == 0.0)
    return std::nullopt;
  const double s = std::sinh(omega * dt);
  const double c = std::cosh(omega * dt);
  const complex prefactor = std::sqrt(omega / complex(0.0, 2.0 * std::numbers::pi * s));
  return prefactor * std::polar(1.0, omega * (c * (x * x + x_prime * x_prime) - 2.0 * x * x_prime) / (2.0 * s));
}

namespace {

/// gamma(t) = f + i g solves gamma'' = -V'' gamma with gamma(0) = 1, gamma'(0) = i.
struct Dilation {
  double modulus;  // |gamma|
  double angle;    // arg gamma
  double chirp;    // d/dt ln |gamma|
};

Dilation dilation(PotentialKind potential, double t) {
  double f = 1.0, g = t, df = 0.0, dg = 1.0;
  if (potential == PotentialKind::IHO) {
    f = std::cosh(t);
    g = std::sinh(t);
    df = g;
    dg = f;
  } else if (potential != PotentialKind::Free) {
    throw ContractError("evolve_analytic supports Free and IHO only");
  }
  const double m2 = f * f + g * g;
  return {std::sqrt(m2), std::atan2(g, f), (f * df + g * dg) / m2};
}

} // namespace

StateVector evolve_analytic(const StateVector &state, PotentialKind potential, double t,
                            const GridSpec &grid) {
  if (state.representation() != StateVector::Representation::Coefficients)
    throw ContractError("evolve_analytic needs a coefficient state");
  if (grid.geometry != state.geometry())
    throw ContractError("evolve_analytic: grid geometry differs from state geometry");
  if (t < 0.0)
    throw ContractError("evolve_analytic: negative time");
  const Dilation d = dilation(potential, t);
  const auto &c = state.coefficients();
  const int K = static_cast<int>(c.size()) - 1;
  const bool radial = grid.geometry == Geometry::Radial2D;
  // Level n picks up e^{-i E_n theta}: E = n + 1/2 in 1D, 2 alpha + 1 for radial l = 0.
  std::vector<complex> phased(c.size());
  for (int n = 0; n <= K; ++n) {
    const double energy = radial ? 2.0 * n + 1.0 : n + 0.5;
    phased[static_cast<std::size_t>(n)] = c(n) * std::polar(1.0, -energy * d.angle);
  }
  const double amplitude = radial ? 1.0 / d.modulus : 1.0 / std::sqrt(d.modulus);
  std::vector<complex> samples(grid.points);
  std::vector<double> column(static_cast<std::size_t>(K) + 1);
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double x = grid.coordinate(j);
    const double y = x / d.modulus;
    if (radial)
      specfun::ho_radial_2d(y, 0, column);
    else
      specfun::ho_wavefunctions_1d(y, column);
    complex sum = 0.0;
    for (int n = 0; n <= K; ++n)
      sum += phased[static_cast<std::size_t>(n)] * column[static_cast<std::size_t>(n)];
    samples[j] = amplitude * sum * std::polar(1.0, 0.5 * d.chirp * x * x);
  }
  return StateVector::from_grid(grid, std::move(samples), state.time() + t);
}

} // namespace recap::evolve
