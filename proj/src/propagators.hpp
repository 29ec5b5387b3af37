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

#include <memory>
#include <vector>

#include "recap/evolve.hpp"

namespace recap::evolve::detail {

std::unique_ptr<Propagator> make_split_step(const StateVector &initial, Potential potential,
                                            const EvolutionSettings &settings);
std::unique_ptr<Propagator> make_radial_cn(const StateVector &initial, Potential potential,
                                           const EvolutionSettings &settings);

/// d^2 psi / dx^2 on a periodic 1D grid by FFT.
std::vector<complex> spectral_second_derivative(const std::vector<complex> &psi, double spacing);

} // namespace recap::evolve::detail
