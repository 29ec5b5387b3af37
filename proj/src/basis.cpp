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

#include "recap/basis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "recap/error.hpp"
#include "recap/specfun.hpp"

namespace recap::basis {

namespace {

constexpr double threshold_band = 1e-9;

void check_args(double u, int K) {
  if (!(u > 0.0) || !std::isfinite(u))
    throw ContractError("basis: u must be positive and finite");
  if (K < 1)
    throw ContractError("basis: K must be at least 1");
}

} // namespace

int choose_basis_size(double u) {
  if (!(u > 0.0))
    throw ContractError("choose_basis_size: u must be positive");
  return static_cast<int>(std::floor(u)) + std::max(14, static_cast<int>(std::ceil(0.33 * u)));
}

HamiltonianMatrix gauss_hamiltonian_1d(double u, int K) {
  check_args(u, K);
  if (K > specfun::max_order)
    throw CapabilityError("basis size " + std::to_string(K) + " exceeds the polynomial ceiling");
  const double a = 1.0 + 1.0 / (2.0 * u);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(K + 1, K + 1);
  for (int m = 0; m <= K; ++m) {
    for (int n = m; n <= K; n += 2) {
      // <phi_m| x^2 / 2 |phi_n>
      double half_x2 = 0.0;
      if (n == m)
        half_x2 = 0.5 * (n + 0.5);
      else if (n == m + 2)
        half_x2 = 0.25 * std::sqrt((m + 1.0) * (m + 2.0));
      double entry = -half_x2 - u * specfun::hermite_function_overlap(m, n, a);
      if (n == m)
        entry += n + 0.5;
      h(m, n) = entry;
      h(n, m) = entry;
    }
  }
  return {std::move(h), Geometry::OneD, u, 0};
}

HamiltonianMatrix gauss_hamiltonian_2d(double u, int K, int l) {
  check_args(u, K);
  const int abs_l = l < 0 ? -l : l;
  if (2 * K + abs_l > specfun::max_order)
    throw CapabilityError("basis size " + std::to_string(K) + " exceeds the polynomial ceiling");
  const double p = 1.0 + 1.0 / (2.0 * u);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(K + 1, K + 1);
  for (int a1 = 0; a1 <= K; ++a1) {
    for (int a2 = a1; a2 <= K; ++a2) {
      // <a1| r^2 / 2 |a2>: tridiagonal in the radial quantum number
      double half_r2 = 0.0;
      if (a2 == a1)
        half_r2 = 0.5 * (2.0 * a1 + abs_l + 1.0);
      else if (a2 == a1 + 1)
        half_r2 = -0.5 * std::sqrt((a1 + 1.0) * (a1 + abs_l + 1.0));
      double entry = -half_r2 - u * specfun::laguerre_function_overlap(a1, a2, abs_l, p);
      if (a2 == a1)
        entry += 2.0 * a1 + abs_l + 1.0;
      h(a1, a2) = entry;
      h(a2, a1) = entry;
    }
  }
  return {std::move(h), Geometry::Radial2D, u, l};
}

BoundBasis bound_states(const HamiltonianMatrix &h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h.entries);
  if (solver.info() != Eigen::Success) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(h.entries);
    const auto &s = svd.singularValues();
    throw NumericError("eigensolver failed; condition number " +
                       std::to_string(s(0) / s(s.size() - 1)));
  }
  BoundBasis out;
  out.geometry = h.geometry;
  out.u = h.u;
  out.K = static_cast<int>(h.entries.rows()) - 1;
  out.l_sector = h.l_sector;
  const auto &values = solver.eigenvalues();
  std::vector<int> keep;
  for (int i = 0; i < values.size(); ++i) {
    if (values(i) < -threshold_band)
      keep.push_back(i);
    else if (values(i) < 0.0)
      out.borderline.push_back(values(i));
  }
  out.coefficients.resize(h.entries.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) {
    Eigen::VectorXd v = solver.eigenvectors().col(keep[j]);
    Eigen::Index peak = 0;
    v.cwiseAbs().maxCoeff(&peak);
    if (v(peak) < 0.0)
      v = -v;
    out.coefficients.col(static_cast<Eigen::Index>(j)) = v;
    out.energies.push_back(values(keep[j]));
  }
  return out;
}

BoundBasis bound_states_1d(double u, int K) { return bound_states(gauss_hamiltonian_1d(u, K)); }

BoundBasis bound_states_2d(double u, int K, int l) {
  return bound_states(gauss_hamiltonian_2d(u, K, l));
}

std::string to_json(const BoundBasis &basis) {
  nlohmann::ordered_json j;
  j["geometry"] = std::string(to_string(basis.geometry));
  j["u"] = basis.u;
  j["K"] = basis.K;
  j["l"] = basis.l_sector;
  j["energies"] = basis.energies;
  j["borderline"] = basis.borderline;
  auto columns = nlohmann::ordered_json::array();
  for (Eigen::Index c = 0; c < basis.coefficients.cols(); ++c) {
    std::vector<double> col(basis.coefficients.col(c).begin(), basis.coefficients.col(c).end());
    columns.push_back(col);
  }
  j["coefficients"] = columns;
  return j.dump(1);
}

BoundBasis from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("bound basis: malformed JSON: ") + e.what());
  }
  try {
    BoundBasis b;
    b.geometry = parse_geometry(j.at("geometry").get<std::string>());
    b.u = j.at("u").get<double>();
    b.K = j.at("K").get<int>();
    b.l_sector = j.at("l").get<int>();
    b.energies = j.at("energies").get<std::vector<double>>();
    if (j.contains("borderline"))
      b.borderline = j.at("borderline").get<std::vector<double>>();
    const auto &cols = j.at("coefficients");
    if (cols.size() != b.energies.size())
      throw ContractError("bound basis: coefficient column count differs from energy count");
    b.coefficients.resize(b.K + 1, static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const auto col = cols[c].get<std::vector<double>>();
      if (col.size() != static_cast<std::size_t>(b.K + 1))
        throw ContractError("bound basis: coefficient column has wrong length");
      for (std::size_t r = 0; r < col.size(); ++r)
        b.coefficients(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = col[r];
    }
    return b;
  } catch (const nlohmann::json::exception &e) {
    throw ContractError(std::string("bound basis: ") + e.what());
  }
}

} // namespace recap::basis
