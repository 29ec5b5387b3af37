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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "recap/error.hpp"
#include "recap/evolve.hpp"
#include "recap/specfun.hpp"
#include "recap/units.hpp"

#include "propagators.hpp"

namespace recap::evolve {

double GridSpec::spacing() const noexcept {
  return geometry == Geometry::OneD ? 2.0 * extent / static_cast<double>(points)
                                    : extent / static_cast<double>(points);
}

double GridSpec::coordinate(std::size_t i) const noexcept {
  const double h = spacing();
  return geometry == Geometry::OneD ? -extent + static_cast<double>(i) * h
                                    : (static_cast<double>(i) + 0.5) * h;
}

double GridSpec::weight(std::size_t i) const noexcept {
  const double h = spacing();
  if (geometry == Geometry::OneD)
    return h;
  // Midpoint rule for 2 pi r f(r) plus the Euler-Maclaurin end correction at r = 0,
  // which lifts the O(h^2) error of the first cell to O(h^4).
  if (i == 0)
    return 2.0 * std::numbers::pi * h * h * (11.0 / 24.0);
  return 2.0 * std::numbers::pi * coordinate(i) * h;
}

std::vector<double> GridSpec::coordinates() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = coordinate(i);
  return out;
}

StateVector StateVector::from_coefficients(Geometry g, Eigen::VectorXcd coefficients, double time) {
  if (coefficients.size() == 0)
    throw ContractError("state: empty coefficient vector");
  StateVector s;
  s.rep_ = Representation::Coefficients;
  s.geometry_ = g;
  s.time_ = time;
  s.coefficients_ = std::move(coefficients);
  return s;
}

StateVector StateVector::from_grid(const GridSpec &grid, std::vector<complex> samples, double time) {
  if (samples.size() != grid.points || grid.points == 0)
    throw ContractError("state: sample count does not match the grid");
  StateVector s;
  s.rep_ = Representation::Grid;
  s.geometry_ = grid.geometry;
  s.time_ = time;
  s.grid_ = grid;
  s.samples_ = std::move(samples);
  return s;
}

StateVector StateVector::eigenstate(Geometry g, int n) {
  if (n < 0)
    throw ContractError("state: negative level");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n + 1);
  c(n) = 1.0;
  return from_coefficients(g, std::move(c));
}

const Eigen::VectorXcd &StateVector::coefficients() const {
  if (rep_ != Representation::Coefficients)
    throw ContractError("state: not in coefficient representation");
  return coefficients_;
}

const GridSpec &StateVector::grid() const {
  if (rep_ != Representation::Grid)
    throw ContractError("state: not in grid representation");
  return grid_;
}

const std::vector<complex> &StateVector::samples() const {
  if (rep_ != Representation::Grid)
    throw ContractError("state: not in grid representation");
  return samples_;
}

std::vector<complex> &StateVector::samples() {
  if (rep_ != Representation::Grid)
    throw ContractError("state: not in grid representation");
  return samples_;
}

double StateVector::norm() const {
  if (rep_ == Representation::Coefficients)
    return coefficients_.squaredNorm();
  double sum = 0.0;
  for (std::size_t i = 0; i < samples_.size(); ++i)
    sum += std::norm(samples_[i]) * grid_.weight(i);
  return sum;
}

Eigen::MatrixXd basis_table(const GridSpec &grid, int K) {
  if (K < 0)
    throw ContractError("basis_table: negative K");
  Eigen::MatrixXd table(K + 1, static_cast<Eigen::Index>(grid.points));
  std::vector<double> column(static_cast<std::size_t>(K) + 1);
  for (std::size_t j = 0; j < grid.points; ++j) {
    if (grid.geometry == Geometry::OneD)
      specfun::ho_wavefunctions_1d(grid.coordinate(j), column);
    else
      specfun::ho_radial_2d(grid.coordinate(j), 0, column);
    for (int i = 0; i <= K; ++i)
      table(i, static_cast<Eigen::Index>(j)) = column[static_cast<std::size_t>(i)];
  }
  return table;
}

StateVector StateVector::to_grid(const GridSpec &grid) const {
  if (grid.geometry != geometry_)
    throw ContractError("state: grid geometry differs from state geometry");
  if (rep_ == Representation::Grid) {
    if (!(grid == grid_))
      throw ContractError("state: resampling between grids is not supported");
    return *this;
  }
  const int K = static_cast<int>(coefficients_.size()) - 1;
  const Eigen::MatrixXd table = basis_table(grid, K);
  const Eigen::VectorXcd values = table.transpose().cast<complex>() * coefficients_;
  return from_grid(grid, std::vector<complex>(values.begin(), values.end()), time_);
}

Eigen::VectorXcd StateVector::project(int K) const {
  if (rep_ == Representation::Coefficients) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(K + 1);
    const auto n = std::min<Eigen::Index>(K + 1, coefficients_.size());
    out.head(n) = coefficients_.head(n);
    return out;
  }
  const Eigen::MatrixXd table = basis_table(grid_, K);
  Eigen::VectorXcd weighted(static_cast<Eigen::Index>(samples_.size()));
  for (std::size_t j = 0; j < samples_.size(); ++j)
    weighted(static_cast<Eigen::Index>(j)) = samples_[j] * grid_.weight(j);
  return table.cast<complex>() * weighted;
}

GridSpec EvolutionSettings::grid() const {
  return method == Method::SplitStep ? GridSpec::line(grid_extent, grid_points)
                                     : GridSpec::radial(grid_extent, grid_points);
}

void EvolutionSettings::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw ContractError("solver.dt must be positive");
  if (grid_points < 16)
    throw ContractError("solver.grid_points must be at least 16");
  if (method == Method::SplitStep && !std::has_single_bit(grid_points))
    throw ContractError("solver.grid_points must be a power of two for the spectral method");
  if (!(grid_extent > 0.0) || !std::isfinite(grid_extent))
    throw ContractError("solver.grid_extent must be positive");
  if (!(absorber_width > 0.0 && absorber_width < 0.3))
    throw ContractError("solver.absorber_width must lie in (0, 0.3)");
  if (!(absorber_strength >= 0.0))
    throw ContractError("solver.absorber_strength must be non-negative");
  if (!(abort_absorbed_norm > 0.0))
    throw ContractError("abort_absorbed_norm must be positive");
}

EvolutionSettings default_settings(Geometry g, double u, int K) {
  EvolutionSettings s;
  s.grid_extent = std::max(6.0 * units::trap_edge(u), 40.0);
  if (g == Geometry::OneD) {
    s.method = Method::SplitStep;
    // Largest grid wavenumber must exceed the momentum spread of phi_K with margin.
    const double k_needed = 2.0 * std::sqrt(2.0 * K + 1.0) + 10.0;
    std::size_t n = 4096;
    while (std::numbers::pi / (2.0 * s.grid_extent / static_cast<double>(n)) < k_needed)
      n *= 2;
    s.grid_points = n;
  } else {
    s.method = Method::CrankNicolsonRadial;
    s.grid_points = 32768;
  }
  return s;
}

double absorber(const EvolutionSettings &settings, double abs_x) noexcept {
  const double start = (1.0 - settings.absorber_width) * settings.grid_extent;
  if (abs_x <= start)
    return 0.0;
  const double s = std::min(1.0, (abs_x - start) / (settings.grid_extent - start));
  return settings.absorber_strength * s * s;
}

Propagator::Propagator(StateVector initial, Potential potential, EvolutionSettings settings)
    : state_(std::move(initial)), potential_(potential), settings_(settings),
      horizon_(std::numeric_limits<double>::infinity()) {
  settings_.validate();
  if (potential_.kind == PotentialKind::IGauss && settings_.grid_extent < 4.0 * units::trap_edge(potential_.u))
    throw ContractError("grid extent must be at least 4 X_edge for the inverted Gaussian");
  state_ = state_.to_grid(settings_.grid());
  initial_norm_ = state_.norm();
}

double Propagator::absorbed_norm() const { return initial_norm_ - conserved_norm(); }

void Propagator::advance_to(double t) {
  const double start = state_.time();
  if (t < start)
    throw ContractError("propagator: cannot step backwards");
  const double dt = settings_.dt;
  const auto full = static_cast<long>(std::floor((t - start) / dt * (1.0 + 1e-12)));
  for (long k = 1; k <= full + 1; ++k) {
    const double target = k <= full ? start + static_cast<double>(k) * dt : t;
    // Full steps reuse the cached factors; only the remainder step differs from dt.
    const double h = k <= full ? dt : target - state_.time();
    if (h <= 1e-12 * dt)
      break;
    step(h);
    state_.set_time(target);
    const double lost = absorbed_norm();
    if (lost > horizon_tolerance && std::isinf(horizon_))
      horizon_ = target;
    if (lost > settings_.abort_absorbed_norm)
      throw StateLeftBoxError(lost, fmt::format("state left simulation box at t = {:.6g} "
                                                "(absorbed norm {:.3g}); increase solver.grid_extent",
                                                target, lost));
  }
  state_.set_time(t);
}

std::unique_ptr<Propagator> make_propagator(const StateVector &initial, Potential potential,
                                            const EvolutionSettings &settings) {
  if (initial.geometry() == Geometry::OneD && settings.method == Method::SplitStep)
    return detail::make_split_step(initial, potential, settings);
  if (initial.geometry() == Geometry::Radial2D && settings.method == Method::CrankNicolsonRadial)
    return detail::make_radial_cn(initial, potential, settings);
  throw ContractError("make_propagator: state geometry does not match the solver method");
}

StateVector evolve_numerical_1d(const StateVector &state, Potential potential, double t,
                                const EvolutionSettings &settings) {
  if (state.geometry() != Geometry::OneD || settings.method != Method::SplitStep)
    throw ContractError("evolve_numerical_1d needs a 1D state and split-step settings");
  auto p = make_propagator(state, potential, settings);
  p->advance_to(state.time() + t);
  return p->state();
}

StateVector evolve_numerical_2d_radial(const StateVector &state, Potential potential, double t,
                                       const EvolutionSettings &settings) {
  if (state.geometry() != Geometry::Radial2D || settings.method != Method::CrankNicolsonRadial)
    throw ContractError("evolve_numerical_2d_radial needs a radial state and Crank-Nicolson settings");
  auto p = make_propagator(state, potential, settings);
  p->advance_to(state.time() + t);
  return p->state();
}

void write_state(std::ostream &out, const StateVector &state, const EvolutionSettings &settings) {
  const auto &grid = state.grid();
  fmt::print(out, "# geometry: {}\n", to_string(grid.geometry));
  fmt::print(out, "# time: {:.17g}\n", state.time());
  fmt::print(out, "# grid_points: {}\n", grid.points);
  fmt::print(out, "# grid_extent: {:.17g}\n", grid.extent);
  fmt::print(out, "# dt: {:.17g}\n", settings.dt);
  fmt::print(out, "# absorber_width: {:.17g}\n", settings.absorber_width);
  fmt::print(out, "# absorber_strength: {:.17g}\n", settings.absorber_strength);
  fmt::print(out, "{},re,im\n", grid.geometry == Geometry::OneD ? "x" : "r");
  const auto &s = state.samples();
  for (std::size_t i = 0; i < s.size(); ++i)
    fmt::print(out, "{:.17g},{:.17g},{:.17g}\n", grid.coordinate(i), s[i].real(), s[i].imag());
}

} // namespace recap::evolve
