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

#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "recap/basis.hpp"
#include "recap/evolve.hpp"
#include "recap/types.hpp"
#include "recap/units.hpp"

/// Survival and recapture probabilities, thermal averaging, recapture time and the
/// initial quantum spread.
namespace recap::recapture {

struct RecaptureCurve {
  std::vector<double> times;    ///< dimensionless
  std::vector<double> seconds;
  std::vector<double> values;
  PotentialKind potential = PotentialKind::IGauss;
  Geometry geometry = Geometry::OneD;
  double temperature_nK = 0.0;
  int cutoff_N = 0;
  std::string settings_fingerprint;
  /// Dimensionless time after which the solver stopped being trustworthy.
  double validity_horizon = std::numeric_limits<double>::infinity();
  /// Pointwise square of a 1D curve standing in for the radial one.
  bool approximation = false;
  /// Thermal weights were renormalized over the kept levels.
  bool renormalized = true;
};

struct ThermalEnsemble {
  double temperature_nK = 0.0;
  double beta_hbar_omega = std::numeric_limits<double>::infinity();
  int cutoff_N = 0;
  /// e^{-beta E_n} / Z for n = 0..N (levels measured from the ground state).
  std::vector<double> weights;
};

enum class SpreadMethod { AnalyticCovariance, FiniteDifference };

struct SpreadReport {
  PotentialKind potential = PotentialKind::Free;
  double value = 0.0;
  SpreadMethod method = SpreadMethod::AnalyticCovariance;
};

std::string_view to_string(SpreadMethod m) noexcept;

/// |<psi_t|psi_0>|^2. Both on the same grid, both coefficient vectors, or one of each
/// (the coefficient state is sampled onto the grid).
double survival_probability(const evolve::StateVector &psi_t, const evolve::StateVector &psi_0);

/// Projection onto the bound manifold of a BoundBasis, with the oscillator table for one
/// grid precomputed.
class BoundProjector {
public:
  BoundProjector(const basis::BoundBasis &bound, const evolve::GridSpec &grid);

  /// sum_n |<psi_Gauss,n|psi>|^2 for a state on this projector's grid (or coefficients).
  double operator()(const evolve::StateVector &psi) const;
  const evolve::GridSpec &grid() const noexcept { return grid_; }

private:
  evolve::GridSpec grid_;
  Eigen::MatrixXd table_;      // (K+1) x N, rows are weighted basis functions
  Eigen::MatrixXd bound_;      // (K+1) x count
};

double recapture_probability(const evolve::StateVector &psi_t, const basis::BoundBasis &bound);

/// Smallest N with Z_N / Z = 1 - exp(-beta hbar omega (N + 1)) > criterion.
int thermal_cutoff(double temperature_nK, double omega, double criterion = 0.99);
ThermalEnsemble thermal_ensemble(double temperature_nK, double omega, double criterion = 0.99);

/// Thermally averaged recapture probability at arbitrary times.
///
/// Each kept level evolves independently (in parallel when threads > 1) and the weighted
/// sum runs in level order, so results do not depend on scheduling. Numerical levels keep
/// checkpoints of earlier evaluations and restart from the latest one at or before t.
class RecaptureEvaluator {
public:
  RecaptureEvaluator(PotentialKind potential, const ThermalEnsemble &ensemble,
                     const basis::BoundBasis &bound, const evolve::EvolutionSettings &settings,
                     unsigned threads = 1);
  ~RecaptureEvaluator();
  RecaptureEvaluator(const RecaptureEvaluator &) = delete;
  RecaptureEvaluator &operator=(const RecaptureEvaluator &) = delete;

  double operator()(double t);

  /// Earliest validity horizon over the levels evaluated so far.
  double validity_horizon() const noexcept { return horizon_; }
  /// Level weights after renormalization.
  const std::vector<double> &weights() const noexcept { return weights_; }

private:
  double level_probability(std::size_t level, double t);

  PotentialKind potential_;
  Geometry geometry_;
  double u_;
  evolve::EvolutionSettings settings_;
  unsigned threads_;
  std::vector<double> weights_;
  std::vector<int> levels_;
  BoundProjector projector_;
  std::vector<std::map<double, std::unique_ptr<evolve::Propagator>>> checkpoints_;
  double horizon_ = std::numeric_limits<double>::infinity();
};

/// Thermal levels of the requested geometry: 1D n = 0..N, radial l = 0 with 2 alpha <= N.
std::vector<int> thermal_levels(Geometry g, int cutoff_N);

RecaptureCurve recapture_curve(const units::DimensionlessModel &model, PotentialKind potential,
                               std::span<const double> times, double temperature_nK,
                               const basis::BoundBasis &bound,
                               const evolve::EvolutionSettings &settings, unsigned threads = 1);

struct RecaptureTime {
  double dimensionless = 0.0;
  double seconds = 0.0;
};

inline constexpr double default_threshold = 1.0 - 1e-4;

/// First crossing below `threshold`, bracketed on the samples and refined by bisection
/// of `evaluate` to relative precision 1e-3 (linear interpolation without one).
/// Throws BeyondHorizonError when no sample inside the validity horizon is below it.
RecaptureTime recapture_time(const RecaptureCurve &curve, double t0_seconds,
                             double threshold = default_threshold,
                             const std::function<double(double)> &evaluate = {});

/// P''(0) of the survival probability of psi_0 under `potential`.
///
/// AnalyticCovariance: -2 Cov(V - d^2/2, V - x^2/2) by quadrature on the 1D grid of
/// `settings`. FiniteDifference: (P(h) - 2 + P(-h)) / h^2 from split-step evolution, with
/// P(-h) obtained by evolving conj(psi_0) forward.
SpreadReport initial_quantum_spread(const Potential &potential, const evolve::StateVector &psi_0,
                                    SpreadMethod method, const evolve::EvolutionSettings &settings,
                                    double h = 0.02);

RecaptureCurve recapture_2d_from_1d(const RecaptureCurve &curve_1d);

/// Header lines `# key: value`, then `t_dimensionless,t_seconds,P` rows.
void write_curve(std::ostream &out, const RecaptureCurve &curve,
                 const std::vector<std::pair<std::string, std::string>> &extra_header = {});
RecaptureCurve read_curve(std::istream &in);

} // namespace recap::recapture
