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

#include "recap/units.hpp"

#include <cmath>
#include <numbers>

#include "recap/error.hpp"

namespace recap::units {

namespace {

void require_positive(double value, const char *field) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ValidationError(field, "must be positive and finite");
}

double kilograms(const TrapConfig &trap) { return trap.atom_mass_amu * codata::atomic_mass_unit; }
double depth_joule(const TrapConfig &trap) { return codata::boltzmann * trap.depth_uK * 1e-6; }
double angular_frequency(const TrapConfig &trap) {
  return 2.0 * std::numbers::pi * trap.trap_frequency_kHz * 1e3;
}

} // namespace

void TrapConfig::validate() const {
  require_positive(depth_uK, "depth_U0");
  require_positive(trap_frequency_kHz, "trap_frequency_f");
  require_positive(atom_mass_amu, "atom_mass");
  if (!(temperature_nK >= 0.0) || !std::isfinite(temperature_nK))
    throw ValidationError("temperature_T", "must be non-negative and finite");
  require_positive(interatomic_R_um, "interatomic_R");
  if (!std::isfinite(c6_over_h_GHz_um6))
    throw ValidationError("vdw_C6_over_h", "must be finite");
  if (rabi_frequency_MHz)
    require_positive(*rabi_frequency_MHz, "rabi_frequency");
  if (rayleigh_range_um)
    require_positive(*rayleigh_range_um, "rayleigh_range_zR");
}

double DimensionlessModel::depth_uK() const noexcept {
  return u * codata::hbar * omega / codata::boltzmann * 1e6;
}

double DimensionlessModel::trap_frequency_kHz() const noexcept {
  return omega / (2.0 * std::numbers::pi) * 1e-3;
}

double DimensionlessModel::mass_amu() const noexcept {
  return codata::hbar / (x0 * x0 * omega) / codata::atomic_mass_unit;
}

DimensionlessModel build_model(const TrapConfig &trap) {
  trap.validate();
  DimensionlessModel model;
  model.omega = angular_frequency(trap);
  model.u = depth_joule(trap) / (codata::hbar * model.omega);
  model.x0 = std::sqrt(codata::hbar / (kilograms(trap) * model.omega));
  model.t0 = 1.0 / model.omega;
  return model;
}

double waist_from_frequency(const TrapConfig &trap) {
  trap.validate();
  const double omega = angular_frequency(trap);
  return std::sqrt(4.0 * depth_joule(trap) / (kilograms(trap) * omega * omega));
}

double frequency_from_waist(const TrapConfig &trap, double waist_m) {
  trap.validate();
  require_positive(waist_m, "waist");
  return std::sqrt(4.0 * depth_joule(trap) / (kilograms(trap) * waist_m * waist_m));
}

double axial_frequency(const TrapConfig &trap) {
  trap.validate();
  if (!trap.rayleigh_range_um)
    throw ValidationError("rayleigh_range_zR", "axial data unavailable");
  const double zr = *trap.rayleigh_range_um * 1e-6;
  return std::sqrt(2.0 * depth_joule(trap) / (kilograms(trap) * zr * zr));
}

TimescaleReport timescales(const TrapConfig &trap) {
  trap.validate();
  if (trap.c6_over_h_GHz_um6 == 0.0)
    throw ValidationError("vdw_C6_over_h", "interaction undefined");

  TimescaleReport report;
  report.tau_mot = 1.0 / angular_frequency(trap);
  // C6/h is an ordinary frequency times length^6; no 2 pi.
  const double interaction_hz =
      std::abs(trap.c6_over_h_GHz_um6) * 1e9 / std::pow(trap.interatomic_R_um, 6);
  report.tau_int = 1.0 / interaction_hz;
  if (trap.rabi_frequency_MHz)
    report.tau_spin = 1.0 / (*trap.rabi_frequency_MHz * 1e6);
  return report;
}

double trap_edge(double u) {
  if (!(u > 0.0))
    throw ValidationError("u", "must be positive");
  return 3.035 * std::sqrt(u);
}

} // namespace recap::units
