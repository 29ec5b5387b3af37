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
#include <vector>

#include <Eigen/Dense>

#include "recap/types.hpp"

/// Bound states of the trapping Gaussian well in a truncated oscillator basis.
namespace recap::basis {

/// K = floor(u) + max(14, ceil(0.33 u)); u is roughly the number of bound states.
int choose_basis_size(double u);

/// Dense (K+1) x (K+1) Hamiltonian of V = -u exp(-x^2 / 2u) in the oscillator basis.
struct HamiltonianMatrix {
  Eigen::MatrixXd entries;
  Geometry geometry = Geometry::OneD;
  double u = 0.0;
  int l_sector = 0;
};

/// Negative-energy eigenstates. Column j of `coefficients` holds the oscillator-basis
/// expansion of bound state j (phi_0..phi_K in 1D, alpha = 0..K of the l sector in 2D).
struct BoundBasis {
  Geometry geometry = Geometry::OneD;
  double u = 0.0;
  int K = 0;
  int l_sector = 0;
  Eigen::MatrixXd coefficients;
  std::vector<double> energies;
  /// Eigenvalues in [-1e-9, 0): too close to threshold to count as bound.
  std::vector<double> borderline;

  int count() const noexcept { return static_cast<int>(energies.size()); }
};

HamiltonianMatrix gauss_hamiltonian_1d(double u, int K);

/// l sector of the radial problem; only |l| matters.
HamiltonianMatrix gauss_hamiltonian_2d(double u, int K, int l);

/// Eigenpairs with E < -1e-9, ascending. Each column is signed so that its
/// largest-magnitude entry is positive.
BoundBasis bound_states(const HamiltonianMatrix &h);

BoundBasis bound_states_1d(double u, int K);
BoundBasis bound_states_2d(double u, int K, int l);

/// JSON with keys geometry, u, K, l, energies, borderline, coefficients (array of columns).
std::string to_json(const BoundBasis &basis);
BoundBasis from_json(std::string_view text);

} // namespace recap::basis
