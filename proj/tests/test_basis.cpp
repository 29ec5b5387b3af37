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


#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracles.hpp"
#include "recap/basis.hpp"
#include "recap/error.hpp"
#include "recap/specfun.hpp"
#include "recap/units.hpp"

using namespace recap;
using namespace recap::basis;
using doctest::Approx;

namespace {

const double u_ref = units::build_model(units::TrapConfig{}).u;

/// Relative residual ||(H - E) psi|| / max(1, |E|) of a 1D bound state on a fine grid.
double residual_1d(const BoundBasis &b, int i) {
  const double h = 0.01, L = 40.0;
  const int N = static_cast<int>(2 * L / h);
  std::vector<double> psi(N + 1), col(b.K + 1);
  for (int j = 0; j <= N; ++j) {
    specfun::ho_wavefunctions_1d(-L + j * h, col);
    double s = 0;
    for (int k = 0; k <= b.K; ++k)
      s += b.coefficients(k, i) * col[k];
    psi[j] = s;
  }
  double r2 = 0, n2 = 0;
  for (int j = 2; j <= N - 2; ++j) {
    const double x = -L + j * h;
    const double d2 = (-psi[j + 2] + 16 * psi[j + 1] - 30 * psi[j] + 16 * psi[j - 1] - psi[j - 2]) / (12 * h * h);
    const double r = -0.5 * d2 - b.u * std::exp(-x * x / (2 * b.u)) * psi[j] - b.energies[i] * psi[j];
    r2 += r * r * h;
    n2 += psi[j] * psi[j] * h;
  }
  return std::sqrt(r2 / n2) / std::max(1.0, std::abs(b.energies[i]));
}

} // namespace

TEST_CASE("basis size") {
  CHECK(choose_basis_size(u_ref) == 55);
  CHECK(choose_basis_size(1.0) == 15);
  CHECK(choose_basis_size(100.0) == 133);
  CHECK_THROWS(choose_basis_size(0.0));
}

TEST_CASE("1d hamiltonian") {
  const auto h = gauss_hamiltonian_1d(u_ref, 55);
  REQUIRE(h.entries.rows() == 56);
  CHECK((h.entries - h.entries.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  for (int m = 0; m <= 55; ++m)
    for (int n = m + 1; n <= 55; n += 2)
      CHECK(h.entries(m, n) == 0.0);

  // the harmonic part alone: (n + 1/2) minus <x^2/2> leaves 1/4 on the ground state
  const auto shallow = gauss_hamiltonian_1d(1e-300 + 1e-8, 4);
  CHECK(shallow.entries(0, 0) == Approx(0.25).epsilon(1e-6));

  // against a matrix built by quadrature: H = H_HO - x^2/2 + V
  const int K = 12;
  const auto small = gauss_hamiltonian_1d(u_ref, K);
  for (int m = 0; m <= K; ++m)
    for (int n = m; n <= K; n += 2) {
      const double pot = oracle::composite(
          [&](double x) {
            return oracle::phi(m, x) * oracle::phi(n, x) * (-0.5 * x * x - u_ref * std::exp(-x * x / (2 * u_ref)));
          },
          -20, 20, 80);
      CHECK(small.entries(m, n) == Approx((m == n ? n + 0.5 : 0.0) + pot).scale(1.0).epsilon(1e-8));
    }

  CHECK_THROWS_AS(gauss_hamiltonian_1d(u_ref, specfun::max_order + 1), CapabilityError);
  CHECK_THROWS(gauss_hamiltonian_1d(-1.0, 10));
  CHECK_THROWS(gauss_hamiltonian_1d(1.0, 0));
}

TEST_CASE("deep well limit") {
  const double u = 1e4;
  const auto b = bound_states_1d(u, 40);
  for (int n = 0; n < 5; ++n)
    CHECK(std::abs(b.energies[n] - (n + 0.5 - u)) <= 10.0 * (n + 1) * (n + 1) / u);
}

TEST_CASE("bound states at the reference depth") {
  const auto b = bound_states_1d(u_ref, 55);
  CHECK(std::abs(b.count() - 48) <= 2);
  CHECK(b.count() <= 56);
  for (double e : b.energies)
    CHECK(e < 0.0);
  CHECK(std::is_sorted(b.energies.begin(), b.energies.end()));

  const Eigen::MatrixXd gram = b.coefficients.transpose() * b.coefficients;
  CHECK((gram - Eigen::MatrixXd::Identity(b.count(), b.count())).cwiseAbs().maxCoeff() <= 1e-10);

  for (int n = 0; n < 7; ++n)
    CHECK(b.coefficients(n, n) * b.coefficients(n, n) > 0.99);
}

TEST_CASE("low states against a finite-difference diagonalization") {
  // fourth-order differences on [-30, 30]; projections onto phi_n by the trapezoid rule
  const int N = 1200;
  const double L = 30.0, h = 2 * L / (N + 1);
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    const double x = -L + (i + 1) * h;
    H(i, i) = 0.5 * 30 / (12 * h * h) - u_ref * std::exp(-x * x / (2 * u_ref));
    if (i + 1 < N)
      H(i, i + 1) = H(i + 1, i) = -0.5 * 16 / (12 * h * h);
    if (i + 2 < N)
      H(i, i + 2) = H(i + 2, i) = 0.5 / (12 * h * h);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> fd(H);
  const auto b = bound_states_1d(u_ref, 55);
  for (int n = 0; n < 12; ++n) {
    double overlap = 0;
    for (int i = 0; i < N; ++i)
      overlap += fd.eigenvectors()(i, n) * oracle::phi(n, -L + (i + 1) * h);
    overlap *= std::sqrt(h);
    CHECK(b.coefficients(n, n) * b.coefficients(n, n) == Approx(overlap * overlap).epsilon(1e-4));
    CHECK(b.energies[n] == Approx(fd.eigenvalues()[n]).epsilon(1e-5));
  }
}

TEST_CASE("weak wells bind") {
  CHECK(oracle::shooting_count_1d(0.1) >= 1);
  // the bound state at u = 0.1 decays over ~13 oscillator lengths; the default size is too small
  CHECK(bound_states_1d(0.1, 200).count() >= 1);
  CHECK(bound_states_1d(1.0, choose_basis_size(1.0)).count() >= 1);
}

TEST_CASE("energy convergence and variational bound") {
  for (double u : {5.0, 20.0, u_ref, 100.0}) {
    const int K = choose_basis_size(u);
    const auto a = bound_states_1d(u, K);
    const auto b = bound_states_1d(u, K + 10);
    REQUIRE(b.count() >= a.count());
    CAPTURE(u);
    // deep states are converged; states near threshold are basis-limited
    for (int i = 0; i < a.count() / 2; ++i)
      CHECK(std::abs(a.energies[i] - b.energies[i]) < 1e-6);
    for (int i = 0; i < a.count(); ++i)
      CHECK(b.energies[i] <= a.energies[i] + 1e-10);
  }
}

TEST_CASE("count grows with depth") {
  int previous = 0;
  for (double u : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    const int c = bound_states_1d(u, choose_basis_size(u)).count();
    CHECK(c >= previous);
    previous = c;
  }
}

TEST_CASE("residual on a fine grid") {
  for (double u : {5.0, 20.0, u_ref, 100.0}) {
    const int K = choose_basis_size(u);
    const auto a = bound_states_1d(u, K);
    const auto b = bound_states_1d(u, K + 10);
    for (int i = 0; i < a.count(); ++i) {
      if (std::abs(a.energies[i] - b.energies[i]) > 1e-10)
        continue;
      CAPTURE(u);
      CAPTURE(i);
      CHECK(residual_1d(a, i) <= 1e-5);
    }
  }
}

TEST_CASE("2d hamiltonian") {
  const auto h = gauss_hamiltonian_2d(u_ref, 55, 0);
  CHECK((h.entries - h.entries.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(h.l_sector == 0);
  CHECK(h.geometry == Geometry::Radial2D);

  // kinetic + oscillator on the ground state: 1, of which <r^2/2> = 1/2
  const auto shallow = gauss_hamiltonian_2d(1e-8, 3, 0);
  CHECK(shallow.entries(0, 0) == Approx(0.5).epsilon(1e-6));

  const int K = 8;
  const auto small = gauss_hamiltonian_2d(u_ref, K, 0);
  for (int a = 0; a <= K; ++a)
    for (int b = a; b <= K; ++b) {
      const double pot = 2 * oracle::pi * oracle::composite(
                                              [&](double r) {
                                                return r * oracle::radial0(a, r) * oracle::radial0(b, r) *
                                                       (-0.5 * r * r - u_ref * std::exp(-r * r / (2 * u_ref)));
                                              },
                                              0, 25, 100);
      CHECK(small.entries(a, b) == Approx((a == b ? 2 * a + 1.0 : 0.0) + pot).scale(1.0).epsilon(1e-8));
    }
}

TEST_CASE("2d bound states") {
  const auto b1 = bound_states_1d(u_ref, 55);
  const auto b2 = bound_states_2d(u_ref, 55, 0);
  const Eigen::MatrixXd gram = b2.coefficients.transpose() * b2.coefficients;
  CHECK((gram - Eigen::MatrixXd::Identity(b2.count(), b2.count())).cwiseAbs().maxCoeff() <= 1e-10);
  CHECK(b2.energies[0] + u_ref == Approx(2 * (b1.energies[0] + u_ref)).epsilon(0.05));

  int l = 0;
  while (bound_states_2d(u_ref, 55, l).count() > 0)
    l += 5;
  CHECK(l > 0);
  CHECK(l < 100);
  CHECK(bound_states_2d(u_ref, 55, -l).count() == 0);

  // the radial count needs a larger basis to resolve states close to threshold
  const int K = 140;
  CHECK(std::abs(bound_states_2d(u_ref, K, 0).count() - oracle::shooting_count_radial(u_ref)) <= 2);
}

TEST_CASE("json round trip") {
  const auto b = bound_states_2d(7.5, 20, 3);
  const auto back = from_json(to_json(b));
  CHECK(back.geometry == b.geometry);
  CHECK(back.u == b.u);
  CHECK(back.K == b.K);
  CHECK(back.l_sector == 3);
  CHECK(back.energies == b.energies);
  CHECK(back.coefficients == b.coefficients);
  CHECK_THROWS(from_json("{\"u\": 1}"));
}
