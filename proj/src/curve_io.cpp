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

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "recap/error.hpp"
#include "recap/recapture.hpp"

namespace recap::recapture {

void write_curve(std::ostream &out, const RecaptureCurve &curve,
                 const std::vector<std::pair<std::string, std::string>> &extra_header) {
  for (const auto &[key, value] : extra_header)
    fmt::print(out, "# {}: {}\n", key, value);
  fmt::print(out, "# potential: {}\n", to_string(curve.potential));
  fmt::print(out, "# geometry: {}\n", to_string(curve.geometry));
  fmt::print(out, "# temperature_nK: {:.17g}\n", curve.temperature_nK);
  fmt::print(out, "# thermal_cutoff_N: {}\n", curve.cutoff_N);
  fmt::print(out, "# weights_renormalized: {}\n", curve.renormalized);
  fmt::print(out, "# approximation: {}\n", curve.approximation ? "squared-1d" : "none");
  fmt::print(out, "# settings_fingerprint: {}\n", curve.settings_fingerprint);
  fmt::print(out, "# validity_horizon: {:.17g}\n", curve.validity_horizon);
  fmt::print(out, "t_dimensionless,t_seconds,P\n");
  for (std::size_t i = 0; i < curve.times.size(); ++i)
    fmt::print(out, "{:.17g},{:.17g},{:.17g}\n", curve.times[i], curve.seconds[i], curve.values[i]);
}

RecaptureCurve read_curve(std::istream &in) {
  RecaptureCurve curve;
  std::string line;
  int lineno = 0;
  bool header_row = false;
  auto fail = [&](const std::string &what) {
    throw ContractError(fmt::format("curve file line {}: {}", lineno, what));
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos)
        continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 1 + (colon + 1 < line.size() && line[colon + 1] == ' '));
      try {
        if (key == "potential")
          curve.potential = parse_potential(value);
        else if (key == "geometry")
          curve.geometry = parse_geometry(value);
        else if (key == "temperature_nK")
          curve.temperature_nK = std::stod(value);
        else if (key == "thermal_cutoff_N")
          curve.cutoff_N = std::stoi(value);
        else if (key == "weights_renormalized")
          curve.renormalized = value == "true";
        else if (key == "approximation")
          curve.approximation = value != "none";
        else if (key == "settings_fingerprint")
          curve.settings_fingerprint = value;
        else if (key == "validity_horizon")
          curve.validity_horizon = std::stod(value);
      } catch (const std::exception &e) {
        fail(fmt::format("bad value for {}: {}", key, e.what()));
      }
      continue;
    }
    if (!header_row) {
      if (line != "t_dimensionless,t_seconds,P")
        fail("expected column header t_dimensionless,t_seconds,P");
      header_row = true;
      continue;
    }
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c))
      fail("expected three columns");
    try {
      curve.times.push_back(std::stod(a));
      curve.seconds.push_back(std::stod(b));
      curve.values.push_back(std::stod(c));
    } catch (const std::exception &) {
      fail("non-numeric value");
    }
  }
  if (!header_row)
    throw ContractError("curve file: missing column header");
  return curve;
}

} // namespace recap::recapture
