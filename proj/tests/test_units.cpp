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

#include <doctest.h>

#include "recap/error.hpp"
#include "recap/units.hpp"

using namespace recap;
using namespace recap::units;
using doctest::Approx;

namespace {

double hbar_omega_uK(double f_kHz) {
  return codata::hbar * 2.0 * std::numbers::pi * f_kHz * 1e3 / codata::boltzmann * 1e6;
}

} // namespace

TEST_CASE("reference trap") {
  const auto m = build_model(TrapConfig{});
  CHECK(m.u == Approx(41.7).epsilon(0.5 / 41.7));
  CHECK(m.x0 == Approx(67.8e-9).epsilon(2e-3));
  CHECK(m.t0 == Approx(6.366e-6).epsilon(1e-3));
  CHECK(m.omega == Approx(2 * std::numbers::pi * 25e3));
}

TEST_CASE("unit depth") {
  TrapConfig trap;
  trap.depth_uK = hbar_omega_uK(trap.trap_frequency_kHz);
  CHECK(build_model(trap).u == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("round trip is the identity") {
  for (double depth : {0.3, 50.0, 812.0})
    for (double f : {0.7, 25.0, 140.0})
      for (double mass : {1.0, 87.9, 133.0}) {
        TrapConfig trap;
        trap.depth_uK = depth;
        trap.trap_frequency_kHz = f;
        trap.atom_mass_amu = mass;
        const auto m = build_model(trap);
        CHECK(m.depth_uK() == Approx(depth).epsilon(1e-12));
        CHECK(m.trap_frequency_kHz() == Approx(f).epsilon(1e-12));
        CHECK(m.mass_amu() == Approx(mass).epsilon(1e-12));
        CHECK(m.to_dimensionless_time(m.to_seconds(3.7)) == Approx(3.7).epsilon(1e-12));
      }
}

TEST_CASE("u is invariant under common rescaling of depth and frequency") {
  TrapConfig a, b;
  b.depth_uK = 3.5 * a.depth_uK;
  b.trap_frequency_kHz = 3.5 * a.trap_frequency_kHz;
  CHECK(build_model(b).u == Approx(build_model(a).u).epsilon(1e-13));
}

TEST_CASE("waist") {
  TrapConfig trap;
  const double w0 = waist_from_frequency(trap);
  CHECK(w0 == Approx(0.87e-6).epsilon(0.01));
  CHECK(frequency_from_waist(trap, w0) == Approx(build_model(trap).omega).epsilon(1e-12));

  TrapConfig deep = trap;
  deep.depth_uK *= 4;
  CHECK(waist_from_frequency(deep) == Approx(2 * w0).epsilon(1e-12));
}

TEST_CASE("trap edge sits at the 1% intensity radius") {
  CHECK(trap_edge(1.0) == Approx(3.035));
  CHECK(trap_edge(41.7) == Approx(19.6).epsilon(0.005));
  CHECK(trap_edge(4 * 7.3) == Approx(2 * trap_edge(7.3)).epsilon(1e-14));
  CHECK_THROWS_AS(trap_edge(0.0), ValidationError);

  TrapConfig trap;
  const auto m = build_model(trap);
  const double w0 = waist_from_frequency(trap);
  const double x = trap_edge(m.u) * m.x0;
  CHECK(std::exp(-2 * x * x / (w0 * w0)) == Approx(0.01).epsilon(0.1));
}

TEST_CASE("axial frequency") {
  TrapConfig trap;
  CHECK_THROWS_AS(axial_frequency(trap), ValidationError);

  const auto m = build_model(trap);
  const double kg = trap.atom_mass_amu * codata::atomic_mass_unit;
  const double z2 = 2 * codata::boltzmann * trap.depth_uK * 1e-6 / (kg * m.omega * m.omega);
  trap.rayleigh_range_um = std::sqrt(z2) * 1e6;
  CHECK(axial_frequency(trap) == Approx(m.omega).epsilon(1e-12));

  const double base = axial_frequency(trap);
  trap.rayleigh_range_um = 2 * *trap.rayleigh_range_um;
  CHECK(axial_frequency(trap) == Approx(base / 2).epsilon(1e-12));

  trap.rayleigh_range_um = 3.0;
  CHECK(std::isfinite(axial_frequency(trap)));
  CHECK(axial_frequency(trap) > 0);
}

TEST_CASE("timescales") {
  TrapConfig trap;
  auto r = timescales(trap);
  CHECK(r.tau_int == Approx(4.7e-9).epsilon(0.01));
  CHECK(r.tau_mot == Approx(build_model(trap).t0));
  CHECK_FALSE(r.tau_spin);

  trap.interatomic_R_um *= 2;
  CHECK(timescales(trap).tau_int == Approx(64 * r.tau_int).epsilon(1e-12));

  trap.rabi_frequency_MHz = 10.0;
  r = timescales(trap);
  REQUIRE(r.tau_spin);
  // in ordinary-frequency terms f / Omega_R
  CHECK(*r.tau_spin / (2 * std::numbers::pi * r.tau_mot) == Approx(1.0 / 400).epsilon(1e-12));

  trap.c6_over_h_GHz_um6 = 0.0;
  CHECK_THROWS_AS(timescales(trap), ValidationError);
}

TEST_CASE("validation names the field") {
  auto field_of = [](TrapConfig t) {
    try {
      build_model(t);
    } catch (const ValidationError &e) {
      return e.field();
    }
    return std::string();
  };
  TrapConfig t;
  t.depth_uK = -1;
  CHECK(field_of(t) == "depth_U0");
  t = {};
  t.trap_frequency_kHz = 0;
  CHECK(field_of(t) == "trap_frequency_f");
  t = {};
  t.temperature_nK = -3;
  CHECK(field_of(t) == "temperature_T");
  t = {};
  t.interatomic_R_um = 0;
  CHECK(field_of(t) == "interatomic_R");
}
