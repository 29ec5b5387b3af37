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
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "recap/types.hpp"

/// Time evolution: closed-form propagation for Free and IHO, split-step FFT in 1D and
/// Crank-Nicolson on the radial equation otherwise.
namespace recap::evolve {

using complex = std::complex<double>;

/// Uniform sampling. 1D: x_i = -L + i 2L/N, i < N (periodic box).
/// Radial: r_i = (i + 1/2) R/N, weights 2 pi r_i h (first weight end-corrected).
struct GridSpec {
  Geometry geometry = Geometry::OneD;
  double extent = 0.0;
  std::size_t points = 0;

  static GridSpec line(double half_width, std::size_t n) { return {Geometry::OneD, half_width, n}; }
  static GridSpec radial(double radius, std::size_t n) { return {Geometry::Radial2D, radius, n}; }

  double spacing() const noexcept;
  double coordinate(std::size_t i) const noexcept;
  double weight(std::size_t i) const noexcept;
  std::vector<double> coordinates() const;
  bool operator==(const GridSpec &) const = default;
};

/// Wave function as oscillator coefficients or as grid samples. In 2D only the l = 0
/// sector is represented (coefficient alpha multiplies the radial state n = 2 alpha).
class StateVector {
public:
  enum class Representation { Coefficients, Grid };

  static StateVector from_coefficients(Geometry g, Eigen::VectorXcd coefficients, double time = 0.0);
  static StateVector from_grid(const GridSpec &grid, std::vector<complex> samples, double time = 0.0);
  /// Single oscillator eigenstate phi_n (1D) or the l = 0 radial state alpha = n (2D).
  static StateVector eigenstate(Geometry g, int n);

  Representation representation() const noexcept { return rep_; }
  Geometry geometry() const noexcept { return geometry_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  const Eigen::VectorXcd &coefficients() const;
  const GridSpec &grid() const;
  const std::vector<complex> &samples() const;
  std::vector<complex> &samples();

  /// <psi|psi>: exact for coefficients, weighted quadrature on a grid.
  double norm() const;

  /// Samples this state on `grid`. Grid states must already live on `grid`.
  StateVector to_grid(const GridSpec &grid) const;
  /// Oscillator coefficients 0..K (quadrature for grid states).
  Eigen::VectorXcd project(int K) const;

private:
  Representation rep_ = Representation::Coefficients;
  Geometry geometry_ = Geometry::OneD;
  double time_ = 0.0;
  Eigen::VectorXcd coefficients_;
  GridSpec grid_;
  std::vector<complex> samples_;
};

/// Basis functions phi_0..phi_K sampled on a grid, row i holding phi_i.
Eigen::MatrixXd basis_table(const GridSpec &grid, int K);

enum class Method { SplitStep, CrankNicolsonRadial };

struct EvolutionSettings {
  double dt = 1e-3;
  std::size_t grid_points = 4096;
  double grid_extent = 40.0;
  double absorber_width = 0.15;     ///< fraction of the extent, at each edge
  double absorber_strength = 10.0;  ///< peak of the imaginary potential
  Method method = Method::SplitStep;
  /// Absorbed norm that aborts a run with StateLeftBoxError.
  double abort_absorbed_norm = 0.5;

  GridSpec grid() const;
  /// Throws ContractError on a violated invariant.
  void validate() const;
};

/// L = max(6 X_edge, 40), dt = 1e-3. 1D: N = 4096 raised to the next power of two that
/// resolves oscillator states up to K. Radial: N = 32768.
EvolutionSettings default_settings(Geometry g, double u, int K);

/// Kernels in units hbar = m = 1; std::nullopt at dt = 0 (the identity).
std::optional<complex> free_kernel(double x, double x_prime, double dt);
std::optional<complex> iho_kernel(double x, double x_prime, double dt, double omega = 1.0);

/// Exact evolution of a coefficient state under Free or IHO, sampled on `grid`.
/// Each phi_n evolves into a dilated, chirped copy of itself.
StateVector evolve_analytic(const StateVector &state, PotentialKind potential, double t,
                            const GridSpec &grid);

/// Stepping solver with an absorbing layer. Copyable through clone().
class Propagator {
public:
  virtual ~Propagator() = default;

  /// Steps of size dt, with one shorter final step if t is off the step lattice.
  void advance_to(double t);

  virtual std::unique_ptr<Propagator> clone() const = 0;

  const StateVector &state() const noexcept { return state_; }
  double time() const noexcept { return state_.time(); }
  /// Initial norm minus current norm.
  double absorbed_norm() const;
  /// First time the absorbed norm exceeded 1e-6; +inf while it has not.
  double validity_horizon() const noexcept { return horizon_; }
  const EvolutionSettings &settings() const noexcept { return settings_; }

protected:
  Propagator(StateVector initial, Potential potential, EvolutionSettings settings);
  Propagator(const Propagator &) = default;

  virtual void step(double dt) = 0;
  /// Norm the scheme conserves exactly in the absence of absorption.
  virtual double conserved_norm() const { return state_.norm(); }

  StateVector state_;
  Potential potential_;
  EvolutionSettings settings_;
  double initial_norm_ = 1.0;
  double horizon_;
};

std::unique_ptr<Propagator> make_propagator(const StateVector &initial, Potential potential,
                                            const EvolutionSettings &settings);

/// Absorbed norm above this ends the validity horizon.
inline constexpr double horizon_tolerance = 1e-6;

StateVector evolve_numerical_1d(const StateVector &state, Potential potential, double t,
                                const EvolutionSettings &settings);
StateVector evolve_numerical_2d_radial(const StateVector &state, Potential potential, double t,
                                       const EvolutionSettings &settings);

/// Imaginary absorbing potential W(|x|) >= 0 used by both solvers.
double absorber(const EvolutionSettings &settings, double abs_x) noexcept;

/// Header lines, then `coordinate,re,im` rows.
void write_state(std::ostream &out, const StateVector &state, const EvolutionSettings &settings);

} // namespace recap::evolve
