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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "recap/error.hpp"
#include "recap/evolve.hpp"
#include "recap/types.hpp"
#include "recap/units.hpp"

namespace recap::cli {

/// Invalid configuration; maps to exit code 2.
class ConfigError : public ValidationError {
public:
  ConfigError(std::string field, const std::string &message, int line = 0)
      : ValidationError(std::move(field), line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  int line() const noexcept { return line_; }

private:
  int line_;
};

enum class TimeUnit { Microseconds, Dimensionless };

struct TimeGrid {
  double start = 0.0;
  double stop = 30.0;
  int points = 301;
  TimeUnit unit = TimeUnit::Microseconds;
};

/// Explicit solver choices; anything unset falls back to evolve::default_settings.
struct SolverOverrides {
  std::optional<double> dt;
  std::optional<std::size_t> grid_points;
  std::optional<double> grid_extent;
  std::optional<double> absorber_width;
  std::optional<double> absorber_strength;
};

struct SweepSpec {
  double depth_min_uK = 30.0;
  double depth_max_uK = 100.0;
  int depth_steps = 4;
  double frequency_min_kHz = 15.0;
  double frequency_max_kHz = 50.0;
  int frequency_steps = 4;
  double temperature_nK = 0.0;

  std::vector<double> depths() const;
  std::vector<double> frequencies() const;
};

struct RunConfig {
  units::TrapConfig trap;
  std::vector<PotentialKind> potentials{PotentialKind::Free, PotentialKind::IHO, PotentialKind::IGauss};
  std::vector<Geometry> geometries{Geometry::OneD};
  TimeGrid time;
  std::vector<double> temperatures_nK{0.0, 730.0};
  SolverOverrides solver;
  std::optional<int> basis_K;
  SweepSpec sweep;
  bool eigenfunctions = false;

  /// Every resolved key in sorted `key = value` form; hashed into output headers.
  std::string canonical() const;
  /// Dimensionless sample times for a model with time scale t0 (s).
  std::vector<double> sample_times(double t0) const;
  evolve::EvolutionSettings settings(Geometry g, double u, int K) const;
  int basis_size(double u) const;
  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
};

/// Flat `dotted.key = value` text; `#` starts a comment, lists are comma-separated.
RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path &path);

/// Applies one `key=value` on top of a parsed config.
void apply_override(RunConfig &config, std::string_view assignment);

/// Keys accepted by the parser, sorted.
std::vector<std::string> known_keys();

} // namespace recap::cli
