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

#include "recap/recapture.hpp"

#include <algorithm>
#include <cmath>
#include <future>

#include <fmt/format.h>

#include "propagators.hpp"
#include "recap/error.hpp"

namespace recap::recapture {

using evolve::complex;
using evolve::GridSpec;
using evolve::StateVector;

namespace {

constexpr std::size_t checkpoint_cap = 8;

complex grid_inner(const StateVector &a, const StateVector &b) {
  if (!(a.grid() == b.grid()))
    throw ContractError("states live on different grids");
  const auto &x = a.samples();
  const auto &y = b.samples();
  complex sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    sum += std::conj(x[i]) * y[i] * a.grid().weight(i);
  return sum;
}

double beta_hbar_omega(double temperature_nK, double omega) {
  if (!(temperature_nK >= 0.0))
    throw ContractError("temperature must be non-negative");
  if (temperature_nK == 0.0)
    return std::numeric_limits<double>::infinity();
  return units::codata::hbar * omega / (units::codata::boltzmann * temperature_nK * 1e-9);
}

/// Deterministic 64-bit FNV-1a over the canonical settings text.
std::string fingerprint(const evolve::EvolutionSettings &s, const basis::BoundBasis &b) {
  const std::string text =
      fmt::format("dt={:.17g};N={};L={:.17g};aw={:.17g};as={:.17g};method={};K={};u={:.17g}", s.dt,
                  s.grid_points, s.grid_extent, s.absorber_width, s.absorber_strength,
                  s.method == evolve::Method::SplitStep ? "split-step" : "crank-nicolson-radial", b.K, b.u);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

} // namespace

std::string_view to_string(SpreadMethod m) noexcept {
  return m == SpreadMethod::AnalyticCovariance ? "analytic-covariance" : "finite-difference";
}

double survival_probability(const StateVector &psi_t, const StateVector &psi_0) {
  if (psi_t.geometry() != psi_0.geometry())
    throw ContractError("survival_probability: geometries differ");
  using Rep = StateVector::Representation;
  if (psi_t.representation() == Rep::Coefficients && psi_0.representation() == Rep::Coefficients) {
    const auto n = std::max(psi_t.coefficients().size(), psi_0.coefficients().size());
    const Eigen::VectorXcd a = psi_t.project(static_cast<int>(n) - 1);
    const Eigen::VectorXcd b = psi_0.project(static_cast<int>(n) - 1);
    return std::norm(a.dot(b));
  }
  const GridSpec grid =
      psi_t.representation() == Rep::Grid ? psi_t.grid() : psi_0.grid();
  return std::norm(grid_inner(psi_t.to_grid(grid), psi_0.to_grid(grid)));
}

BoundProjector::BoundProjector(const basis::BoundBasis &bound, const GridSpec &grid)
    : grid_(grid), table_(evolve::basis_table(grid, bound.K)), bound_(bound.coefficients) {
  if (grid.geometry != bound.geometry)
    throw ContractError("BoundProjector: basis and grid geometries differ");
  if (bound.geometry == Geometry::Radial2D && bound.l_sector != 0)
    throw ContractError("BoundProjector: radial states carry l = 0 only");
  for (Eigen::Index j = 0; j < table_.cols(); ++j)
    table_.col(j) *= grid.weight(static_cast<std::size_t>(j));
}

double BoundProjector::operator()(const StateVector &psi) const {
  if (psi.geometry() != grid_.geometry)
    throw ContractError("recapture_probability: state geometry differs from the bound basis");
  const Eigen::Index K1 = table_.rows();
  Eigen::VectorXd re, im;
  if (psi.representation() == StateVector::Representation::Coefficients) {
    const Eigen::VectorXcd c = psi.project(static_cast<int>(K1) - 1);
    re = c.real();
    im = c.imag();
  } else {
    if (!(psi.grid() == grid_))
      throw ContractError("recapture_probability: state grid differs from projector grid");
    const auto &s = psi.samples();
    Eigen::VectorXd sr(static_cast<Eigen::Index>(s.size())), si(static_cast<Eigen::Index>(s.size()));
    for (std::size_t i = 0; i < s.size(); ++i) {
      sr(static_cast<Eigen::Index>(i)) = s[i].real();
      si(static_cast<Eigen::Index>(i)) = s[i].imag();
    }
    re = table_ * sr;
    im = table_ * si;
  }
  return (bound_.transpose() * re).squaredNorm() + (bound_.transpose() * im).squaredNorm();
}

double recapture_probability(const StateVector &psi_t, const basis::BoundBasis &bound) {
  if (psi_t.representation() == StateVector::Representation::Coefficients) {
    if (psi_t.geometry() != bound.geometry)
      throw ContractError("recapture_probability: state geometry differs from the bound basis");
    const Eigen::VectorXcd c = psi_t.project(bound.K);
    return (bound.coefficients.transpose() * c.real()).squaredNorm() +
           (bound.coefficients.transpose() * c.imag()).squaredNorm();
  }
  return BoundProjector(bound, psi_t.grid())(psi_t);
}

int thermal_cutoff(double temperature_nK, double omega, double criterion) {
  const double b = beta_hbar_omega(temperature_nK, omega);
  if (std::isinf(b))
    return 0;
  int n = 0;
  while (-std::expm1(-b * (n + 1.0)) <= criterion)
    ++n;
  return n;
}

ThermalEnsemble thermal_ensemble(double temperature_nK, double omega, double criterion) {
  ThermalEnsemble e;
  e.temperature_nK = temperature_nK;
  e.beta_hbar_omega = beta_hbar_omega(temperature_nK, omega);
  e.cutoff_N = thermal_cutoff(temperature_nK, omega, criterion);
  if (std::isinf(e.beta_hbar_omega)) {
    e.weights = {1.0};
    return e;
  }
  const double inv_z = -std::expm1(-e.beta_hbar_omega);
  for (int n = 0; n <= e.cutoff_N; ++n)
    e.weights.push_back(std::exp(-e.beta_hbar_omega * n) * inv_z);
  return e;
}

std::vector<int> thermal_levels(Geometry g, int cutoff_N) {
  std::vector<int> out;
  const int top = g == Geometry::OneD ? cutoff_N : cutoff_N / 2;
  for (int n = 0; n <= top; ++n)
    out.push_back(n);
  return out;
}

RecaptureEvaluator::RecaptureEvaluator(PotentialKind potential, const ThermalEnsemble &ensemble,
                                       const basis::BoundBasis &bound,
                                       const evolve::EvolutionSettings &settings, unsigned threads)
    : potential_(potential), geometry_(bound.geometry), u_(bound.u), settings_(settings),
      threads_(std::max(1u, threads)), levels_(thermal_levels(bound.geometry, ensemble.cutoff_N)),
      projector_(bound, settings.grid()), checkpoints_(levels_.size()) {
  settings_.validate();
  const double b = ensemble.beta_hbar_omega;
  // Level spacing is hbar omega in 1D and 2 hbar omega between l = 0 radial levels.
  const double spacing = geometry_ == Geometry::OneD ? 1.0 : 2.0;
  double total = 0.0;
  for (int n : levels_) {
    const double w = std::isinf(b) ? (n == 0 ? 1.0 : 0.0) : std::exp(-b * spacing * n);
    weights_.push_back(w);
    total += w;
  }
  for (auto &w : weights_)
    w /= total;
}

RecaptureEvaluator::~RecaptureEvaluator() = default;

double RecaptureEvaluator::level_probability(std::size_t level, double t) {
  const StateVector initial = StateVector::eigenstate(geometry_, levels_[level]);
  if (potential_ == PotentialKind::Free || potential_ == PotentialKind::IHO)
    return projector_(evolve::evolve_analytic(initial, potential_, t, projector_.grid()));
  auto &cache = checkpoints_[level];
  auto it = cache.upper_bound(t);
  std::unique_ptr<evolve::Propagator> p;
  if (it == cache.begin())
    p = evolve::make_propagator(initial, Potential{potential_, u_}, settings_);
  else
    p = std::prev(it)->second->clone();
  p->advance_to(t);
  const double value = projector_(p->state());
  cache[t] = std::move(p);
  while (cache.size() > checkpoint_cap)
    cache.erase(cache.begin());
  return value;
}

double RecaptureEvaluator::operator()(double t) {
  if (t < 0.0)
    throw ContractError("recapture evaluator: negative time");
  const std::size_t n = levels_.size();
  std::vector<double> values(n, 0.0);
  if (threads_ == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i)
      if (weights_[i] > 0.0)
        values[i] = level_probability(i, t);
  } else {
    for (std::size_t start = 0; start < n; start += threads_) {
      std::vector<std::future<double>> jobs;
      for (std::size_t i = start; i < std::min(n, start + threads_); ++i)
        jobs.push_back(std::async(std::launch::async, [this, i, t] {
          return weights_[i] > 0.0 ? level_probability(i, t) : 0.0;
        }));
      for (std::size_t i = start; i < std::min(n, start + threads_); ++i)
        values[i] = jobs[i - start].get();
    }
  }
  for (const auto &cache : checkpoints_)
    for (const auto &[time, p] : cache)
      horizon_ = std::min(horizon_, p->validity_horizon());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    sum += weights_[i] * values[i];
  return sum;
}

RecaptureCurve recapture_curve(const units::DimensionlessModel &model, PotentialKind potential,
                               std::span<const double> times, double temperature_nK,
                               const basis::BoundBasis &bound,
                               const evolve::EvolutionSettings &settings, unsigned threads) {
  if (times.empty())
    throw ContractError("recapture_curve: no sample times");
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] < 0.0 || (i > 0 && !(times[i] > times[i - 1])))
      throw ContractError("recapture_curve: times must be non-negative and strictly increasing");
  if (std::fabs(model.u - bound.u) > 1e-9 * model.u)
    throw ContractError("recapture_curve: bound basis was built for a different depth");
  const ThermalEnsemble ensemble = thermal_ensemble(temperature_nK, model.omega);
  RecaptureEvaluator evaluator(potential, ensemble, bound, settings, threads);
  RecaptureCurve curve;
  curve.potential = potential;
  curve.geometry = bound.geometry;
  curve.temperature_nK = temperature_nK;
  curve.cutoff_N = ensemble.cutoff_N;
  curve.settings_fingerprint = fingerprint(settings, bound);
  for (double t : times) {
    curve.times.push_back(t);
    curve.seconds.push_back(model.to_seconds(t));
    curve.values.push_back(evaluator(t));
  }
  curve.validity_horizon = evaluator.validity_horizon();
  return curve;
}

RecaptureTime recapture_time(const RecaptureCurve &curve, double t0_seconds, double threshold,
                             const std::function<double(double)> &evaluate) {
  if (curve.times.empty() || curve.times.size() != curve.values.size())
    throw ContractError("recapture_time: empty or malformed curve");
  if (!(curve.values.front() > threshold))
    throw ContractError("recapture_time: curve starts at or below the threshold");
  std::size_t hit = 0;
  for (std::size_t i = 1; i < curve.times.size(); ++i) {
    if (curve.times[i] > curve.validity_horizon)
      break;
    if (curve.values[i] <= threshold) {
      hit = i;
      break;
    }
  }
  if (hit == 0) {
    double bound = curve.times.front();
    for (double t : curve.times)
      if (t <= curve.validity_horizon)
        bound = t;
    throw BeyondHorizonError(bound, fmt::format("recapture time beyond horizon: P stays above "
                                                "threshold up to t = {:.6g}", bound));
  }
  double lo = curve.times[hit - 1];
  double hi = curve.times[hit];
  double tau;
  if (evaluate) {
    while (hi - lo > 1e-3 * lo && hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (evaluate(mid) > threshold ? lo : hi) = mid;
    }
    tau = 0.5 * (lo + hi);
  } else {
    const double vlo = curve.values[hit - 1];
    const double vhi = curve.values[hit];
    tau = lo + (hi - lo) * (vlo - threshold) / (vlo - vhi);
  }
  return {tau, tau * t0_seconds};
}

SpreadReport initial_quantum_spread(const Potential &potential, const StateVector &psi_0,
                                    SpreadMethod method, const evolve::EvolutionSettings &settings,
                                    double h) {
  if (psi_0.geometry() != Geometry::OneD || settings.method != evolve::Method::SplitStep)
    throw ContractError("initial_quantum_spread: 1D state and split-step settings required");
  const GridSpec grid = settings.grid();
  const StateVector psi = psi_0.to_grid(grid);
  if (std::fabs(psi.norm() - 1.0) > 1e-8)
    throw ContractError("initial_quantum_spread: psi_0 is not normalized");
  SpreadReport report{potential.kind, 0.0, method};
  if (method == SpreadMethod::AnalyticCovariance) {
    const auto &s = psi.samples();
    const auto d2 = evolve::detail::spectral_second_derivative(s, grid.spacing());
    // A = V - d^2/2, B = V - x^2/2
    complex mean_a = 0.0, mean_b = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double x = grid.coordinate(i);
      const double w = grid.weight(i);
      const double v = potential(x);
      const complex a = v * s[i] - 0.5 * d2[i];
      const complex b = (v - 0.5 * x * x) * s[i];
      mean_a += std::conj(s[i]) * a * w;
      mean_b += std::conj(s[i]) * b * w;
      cross += std::conj(a) * b * w;
    }
    report.value = -2.0 * (cross.real() - mean_a.real() * mean_b.real());
    return report;
  }
  if (!(h > 0.0))
    throw ContractError("initial_quantum_spread: step h must be positive");
  evolve::EvolutionSettings fine = settings;
  fine.dt = h / 20.0;
  auto survival_after = [&](const StateVector &start) {
    return survival_probability(evolve::evolve_numerical_1d(start, potential, h, fine), start);
  };
  std::vector<complex> conjugated = psi.samples();
  for (auto &c : conjugated)
    c = std::conj(c);
  const double forward = survival_after(psi);
  const double backward = survival_after(StateVector::from_grid(grid, std::move(conjugated)));
  report.value = (forward - 2.0 + backward) / (h * h);
  return report;
}

RecaptureCurve recapture_2d_from_1d(const RecaptureCurve &curve_1d) {
  if (curve_1d.geometry != Geometry::OneD)
    throw ContractError("recapture_2d_from_1d: input must be a 1D curve");
  RecaptureCurve out = curve_1d;
  out.geometry = Geometry::Radial2D;
  out.approximation = true;
  for (auto &v : out.values)
    v *= v;
  return out;
}

} // namespace recap::recapture
