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

#include "recap/types.hpp"

#include <cmath>

#include "recap/error.hpp"

namespace recap {

std::string_view to_string(Geometry g) noexcept {
  switch (g) {
  case Geometry::OneD: return "1D";
  case Geometry::Radial2D: return "2D-radial";
  }
  return "?";
}

std::string_view to_string(PotentialKind p) noexcept {
  switch (p) {
  case PotentialKind::Free: return "Free";
  case PotentialKind::HO: return "HO";
  case PotentialKind::IHO: return "IHO";
  case PotentialKind::Gauss: return "Gauss";
  case PotentialKind::IGauss: return "IGauss";
  }
  return "?";
}

Geometry parse_geometry(std::string_view name) {
  if (name == "1D" || name == "1d")
    return Geometry::OneD;
  if (name == "2D" || name == "2d" || name == "2D-radial" || name == "radial")
    return Geometry::Radial2D;
  throw ContractError("unknown geometry '" + std::string(name) + "'");
}

PotentialKind parse_potential(std::string_view name) {
  for (auto p : {PotentialKind::Free, PotentialKind::HO, PotentialKind::IHO, PotentialKind::Gauss,
                 PotentialKind::IGauss})
    if (name == to_string(p))
      return p;
  throw ContractError("unknown potential '" + std::string(name) + "'");
}

double Potential::operator()(double x) const noexcept {
  switch (kind) {
  case PotentialKind::Free: return 0.0;
  case PotentialKind::HO: return 0.5 * x * x;
  case PotentialKind::IHO: return -0.5 * x * x;
  case PotentialKind::Gauss: return -u * std::exp(-x * x / (2.0 * u));
  case PotentialKind::IGauss: return u * std::exp(-x * x / (2.0 * u));
  }
  return 0.0;
}

} // namespace recap
