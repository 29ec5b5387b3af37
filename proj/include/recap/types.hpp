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

#include <string>
#include <string_view>

namespace recap {

enum class Geometry { OneD, Radial2D };

/// Potentials the Rydberg (or ground-state) atom can evolve under.
///
/// In dimensionless units with depth u:
///   Free   V = 0
///   HO     V = x^2 / 2
///   IHO    V = -x^2 / 2
///   Gauss  V = -u exp(-x^2 / 2u)   (trapping well, bottom at -u)
///   IGauss V = +u exp(-x^2 / 2u)   (anti-trapped Rydberg state)
enum class PotentialKind { Free, HO, IHO, Gauss, IGauss };

std::string_view to_string(Geometry g) noexcept;
std::string_view to_string(PotentialKind p) noexcept;

/// Throws ContractError on an unknown name. Accepts "1D", "2D", "2D-radial".
Geometry parse_geometry(std::string_view name);
PotentialKind parse_potential(std::string_view name);

/// Value of the dimensionless potential at coordinate x (or radius r).
struct Potential {
  PotentialKind kind = PotentialKind::Free;
  double u = 0.0;

  double operator()(double x) const noexcept;

  /// Free and IHO have closed-form propagators.
  bool has_analytic_propagator() const noexcept {
    return kind == PotentialKind::Free || kind == PotentialKind::IHO;
  }
  bool concave() const noexcept {
    return kind == PotentialKind::IHO || kind == PotentialKind::IGauss;
  }
};

} // namespace recap
