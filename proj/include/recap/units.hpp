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

#include <optional>

/// Physical trap parameters, the dimensionless model and characteristic timescales.
namespace recap::units {

/// CODATA 2018 (SI exact where defined).
namespace codata {
inline constexpr double boltzmann = 1.380649e-23;          // J / K
inline constexpr double planck = 6.62607015e-34;           // J s
inline constexpr double hbar = 1.054571817e-34;            // J s
inline constexpr double atomic_mass_unit = 1.66053906660e-27; // kg
} // namespace codata

/// Trap and atom parameters in laboratory units. Defaults are the Sr-88 reference setup.
struct TrapConfig {
  double depth_uK = 50.0;             ///< U0 / k_B, well depth
  double trap_frequency_kHz = 25.0;   ///< ordinary frequency f, omega = 2 pi f
  double atom_mass_amu = 87.90;
  double temperature_nK = 730.0;
  double c6_over_h_GHz_um6 = -154.0;  ///< sign carried, only |C6/h| enters timescales
  double interatomic_R_um = 3.0;
  std::optional<double> rabi_frequency_MHz;
  std::optional<double> rayleigh_range_um;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

struct DimensionlessModel {
  double u = 0.0;      ///< U0 / (hbar omega)
  double x0 = 0.0;     ///< sqrt(hbar / (m omega)), metres
  double t0 = 0.0;     ///< 1 / omega, seconds
  double omega = 0.0;  ///< rad / s

  double to_seconds(double t) const noexcept { return t * t0; }
  double to_dimensionless_time(double seconds) const noexcept { return seconds / t0; }
  double to_metres(double x) const noexcept { return x * x0; }

  /// Inverse conversions, used for round-trip checks and sweep tables.
  double depth_uK() const noexcept;
  double trap_frequency_kHz() const noexcept;
  double mass_amu() const noexcept;
};

struct TimescaleReport {
  std::optional<double> tau_spin;  ///< 1 / Omega_R
  double tau_mot = 0.0;            ///< 1 / omega
  double tau_int = 0.0;            ///< R^6 / |C6 / h|
  std::optional<double> tau_recap; ///< filled in by the recapture stage
};

DimensionlessModel build_model(const TrapConfig &trap);

/// Beam waist w0 (m) consistent with the quoted radial trap frequency.
double waist_from_frequency(const TrapConfig &trap);

/// Radial angular frequency (rad/s) of a trap with waist w0 (m).
double frequency_from_waist(const TrapConfig &trap, double waist_m);

/// Axial angular frequency (rad/s); throws ValidationError if no Rayleigh range is set.
double axial_frequency(const TrapConfig &trap);

TimescaleReport timescales(const TrapConfig &trap);

/// Radius (units of x0) where the Gaussian potential falls to 1% of its centre value.
double trap_edge(double u);

} // namespace recap::units
