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

#include "recap/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "recap/basis.hpp"

namespace recap::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos)
    return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos)
      break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

double to_double(std::string_view key, std::string_view text, int line) {
  double v = 0.0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v))
    throw ConfigError(std::string(key), fmt::format("expected a number, got '{}'", text), line);
  return v;
}

long to_integer(std::string_view key, std::string_view text, int line) {
  long v = 0;
  const auto *end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end)
    throw ConfigError(std::string(key), fmt::format("expected an integer, got '{}'", text), line);
  return v;
}

bool to_bool(std::string_view key, std::string_view text, int line) {
  if (text == "true" || text == "yes" || text == "1")
    return true;
  if (text == "false" || text == "no" || text == "0")
    return false;
  throw ConfigError(std::string(key), fmt::format("expected true or false, got '{}'", text), line);
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

template <class T> std::string opt(const std::optional<T> &v) {
  if (!v)
    return "default";
  if constexpr (std::is_floating_point_v<T>)
    return num(*v);
  else
    return fmt::format("{}", *v);
}

struct Entry {
  std::function<void(RunConfig &, std::string_view, int)> set;
  std::function<std::string(const RunConfig &)> get;
};

const std::map<std::string, Entry, std::less<>> &table() {
  using C = RunConfig;
  using SV = std::string_view;
  static const std::map<std::string, Entry, std::less<>> t = {
      {"trap.depth_u0_uK",
       {[](C &c, SV v, int l) { c.trap.depth_uK = to_double("trap.depth_u0_uK", v, l); },
        [](const C &c) { return num(c.trap.depth_uK); }}},
      {"trap.frequency_kHz",
       {[](C &c, SV v, int l) { c.trap.trap_frequency_kHz = to_double("trap.frequency_kHz", v, l); },
        [](const C &c) { return num(c.trap.trap_frequency_kHz); }}},
      {"trap.mass_amu",
       {[](C &c, SV v, int l) { c.trap.atom_mass_amu = to_double("trap.mass_amu", v, l); },
        [](const C &c) { return num(c.trap.atom_mass_amu); }}},
      {"trap.temperature_nK",
       {[](C &c, SV v, int l) { c.trap.temperature_nK = to_double("trap.temperature_nK", v, l); },
        [](const C &c) { return num(c.trap.temperature_nK); }}},
      {"trap.c6_over_h_GHz_um6",
       {[](C &c, SV v, int l) { c.trap.c6_over_h_GHz_um6 = to_double("trap.c6_over_h_GHz_um6", v, l); },
        [](const C &c) { return num(c.trap.c6_over_h_GHz_um6); }}},
      {"trap.interatomic_R_um",
       {[](C &c, SV v, int l) { c.trap.interatomic_R_um = to_double("trap.interatomic_R_um", v, l); },
        [](const C &c) { return num(c.trap.interatomic_R_um); }}},
      {"trap.rabi_frequency_MHz",
       {[](C &c, SV v, int l) { c.trap.rabi_frequency_MHz = to_double("trap.rabi_frequency_MHz", v, l); },
        [](const C &c) { return opt(c.trap.rabi_frequency_MHz); }}},
      {"trap.rayleigh_range_um",
       {[](C &c, SV v, int l) { c.trap.rayleigh_range_um = to_double("trap.rayleigh_range_um", v, l); },
        [](const C &c) { return opt(c.trap.rayleigh_range_um); }}},
      {"run.potentials",
       {[](C &c, SV v, int l) {
          c.potentials.clear();
          for (auto item : split_list(v)) {
            try {
              c.potentials.push_back(parse_potential(item));
            } catch (const ContractError &) {
              throw ConfigError("run.potentials", fmt::format("unknown potential '{}'", item), l);
            }
          }
        },
        [](const C &c) {
          std::vector<std::string> names;
          for (auto p : c.potentials)
            names.emplace_back(to_string(p));
          return fmt::format("{}", fmt::join(names, ","));
        }}},
      {"run.geometry",
       {[](C &c, SV v, int l) {
          c.geometries.clear();
          for (auto item : split_list(v)) {
            try {
              c.geometries.push_back(parse_geometry(item));
            } catch (const ContractError &) {
              throw ConfigError("run.geometry", fmt::format("unknown geometry '{}'", item), l);
            }
          }
        },
        [](const C &c) {
          std::vector<std::string> names;
          for (auto g : c.geometries)
            names.emplace_back(to_string(g));
          return fmt::format("{}", fmt::join(names, ","));
        }}},
      {"run.temperatures_nK",
       {[](C &c, SV v, int l) {
          c.temperatures_nK.clear();
          for (auto item : split_list(v))
            c.temperatures_nK.push_back(to_double("run.temperatures_nK", item, l));
        },
        [](const C &c) {
          std::vector<std::string> out;
          for (double t : c.temperatures_nK)
            out.push_back(num(t));
          return fmt::format("{}", fmt::join(out, ","));
        }}},
      {"time.start",
       {[](C &c, SV v, int l) { c.time.start = to_double("time.start", v, l); },
        [](const C &c) { return num(c.time.start); }}},
      {"time.stop",
       {[](C &c, SV v, int l) { c.time.stop = to_double("time.stop", v, l); },
        [](const C &c) { return num(c.time.stop); }}},
      {"time.points",
       {[](C &c, SV v, int l) { c.time.points = static_cast<int>(to_integer("time.points", v, l)); },
        [](const C &c) { return fmt::format("{}", c.time.points); }}},
      {"time.unit",
       {[](C &c, SV v, int l) {
          if (v == "us")
            c.time.unit = TimeUnit::Microseconds;
          else if (v == "dimensionless")
            c.time.unit = TimeUnit::Dimensionless;
          else
            throw ConfigError("time.unit", fmt::format("expected 'us' or 'dimensionless', got '{}'", v), l);
        },
        [](const C &c) { return std::string(c.time.unit == TimeUnit::Microseconds ? "us" : "dimensionless"); }}},
      {"solver.dt",
       {[](C &c, SV v, int l) { c.solver.dt = to_double("solver.dt", v, l); },
        [](const C &c) { return opt(c.solver.dt); }}},
      {"solver.grid_points",
       {[](C &c, SV v, int l) {
          const long n = to_integer("solver.grid_points", v, l);
          if (n <= 0)
            throw ConfigError("solver.grid_points", "must be positive", l);
          c.solver.grid_points = static_cast<std::size_t>(n);
        },
        [](const C &c) { return opt(c.solver.grid_points); }}},
      {"solver.grid_extent",
       {[](C &c, SV v, int l) { c.solver.grid_extent = to_double("solver.grid_extent", v, l); },
        [](const C &c) { return opt(c.solver.grid_extent); }}},
      {"solver.absorber_width",
       {[](C &c, SV v, int l) { c.solver.absorber_width = to_double("solver.absorber_width", v, l); },
        [](const C &c) { return opt(c.solver.absorber_width); }}},
      {"solver.absorber_strength",
       {[](C &c, SV v, int l) { c.solver.absorber_strength = to_double("solver.absorber_strength", v, l); },
        [](const C &c) { return opt(c.solver.absorber_strength); }}},
      {"basis.K",
       {[](C &c, SV v, int l) { c.basis_K = static_cast<int>(to_integer("basis.K", v, l)); },
        [](const C &c) { return opt(c.basis_K); }}},
      {"sweep.depth_min_uK",
       {[](C &c, SV v, int l) { c.sweep.depth_min_uK = to_double("sweep.depth_min_uK", v, l); },
        [](const C &c) { return num(c.sweep.depth_min_uK); }}},
      {"sweep.depth_max_uK",
       {[](C &c, SV v, int l) { c.sweep.depth_max_uK = to_double("sweep.depth_max_uK", v, l); },
        [](const C &c) { return num(c.sweep.depth_max_uK); }}},
      {"sweep.depth_steps",
       {[](C &c, SV v, int l) { c.sweep.depth_steps = static_cast<int>(to_integer("sweep.depth_steps", v, l)); },
        [](const C &c) { return fmt::format("{}", c.sweep.depth_steps); }}},
      {"sweep.frequency_min_kHz",
       {[](C &c, SV v, int l) { c.sweep.frequency_min_kHz = to_double("sweep.frequency_min_kHz", v, l); },
        [](const C &c) { return num(c.sweep.frequency_min_kHz); }}},
      {"sweep.frequency_max_kHz",
       {[](C &c, SV v, int l) { c.sweep.frequency_max_kHz = to_double("sweep.frequency_max_kHz", v, l); },
        [](const C &c) { return num(c.sweep.frequency_max_kHz); }}},
      {"sweep.frequency_steps",
       {[](C &c, SV v, int l) {
          c.sweep.frequency_steps = static_cast<int>(to_integer("sweep.frequency_steps", v, l));
        },
        [](const C &c) { return fmt::format("{}", c.sweep.frequency_steps); }}},
      {"sweep.temperature_nK",
       {[](C &c, SV v, int l) { c.sweep.temperature_nK = to_double("sweep.temperature_nK", v, l); },
        [](const C &c) { return num(c.sweep.temperature_nK); }}},
      {"output.eigenfunctions",
       {[](C &c, SV v, int l) { c.eigenfunctions = to_bool("output.eigenfunctions", v, l); },
        [](const C &c) { return std::string(c.eigenfunctions ? "true" : "false"); }}},
  };
  return t;
}

void assign(RunConfig &config, std::string_view key, std::string_view value, int line) {
  const auto &t = table();
  const auto it = t.find(key);
  if (it == t.end())
    throw ConfigError(std::string(key), "unknown key", line);
  if (value.empty())
    throw ConfigError(std::string(key), "missing value", line);
  it->second.set(config, value, line);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  std::vector<double> out;
  for (int i = 0; i < steps; ++i)
    out.push_back(steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1));
  return out;
}

} // namespace

std::vector<double> SweepSpec::depths() const { return linspace(depth_min_uK, depth_max_uK, depth_steps); }

std::vector<double> SweepSpec::frequencies() const {
  return linspace(frequency_min_kHz, frequency_max_kHz, frequency_steps);
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto &[key, entry] : table())
    out += fmt::format("{} = {}\n", key, entry.get(*this));
  return out;
}

std::vector<double> RunConfig::sample_times(double t0) const {
  const double scale = time.unit == TimeUnit::Microseconds ? 1e-6 / t0 : 1.0;
  std::vector<double> out;
  for (int i = 0; i < time.points; ++i)
    out.push_back(scale * (time.start + (time.stop - time.start) * i / (time.points - 1)));
  return out;
}

int RunConfig::basis_size(double u) const { return basis_K ? *basis_K : basis::choose_basis_size(u); }

evolve::EvolutionSettings RunConfig::settings(Geometry g, double u, int K) const {
  evolve::EvolutionSettings s = evolve::default_settings(g, u, K);
  if (solver.dt)
    s.dt = *solver.dt;
  if (solver.grid_points)
    s.grid_points = *solver.grid_points;
  if (solver.grid_extent)
    s.grid_extent = *solver.grid_extent;
  if (solver.absorber_width)
    s.absorber_width = *solver.absorber_width;
  if (solver.absorber_strength)
    s.absorber_strength = *solver.absorber_strength;
  try {
    s.validate();
  } catch (const ContractError &e) {
    throw ConfigError("solver", e.what());
  }
  return s;
}

void RunConfig::validate() const {
  try {
    trap.validate();
  } catch (const ValidationError &e) {
    std::string message = e.what();
    const std::string prefix = e.field() + ": ";
    if (message.starts_with(prefix))
      message.erase(0, prefix.size());
    throw ConfigError(e.field(), message);
  }
  if (potentials.empty())
    throw ConfigError("run.potentials", "at least one potential required");
  if (geometries.empty())
    throw ConfigError("run.geometry", "at least one geometry required");
  if (temperatures_nK.empty())
    throw ConfigError("run.temperatures_nK", "at least one temperature required");
  for (double t : temperatures_nK)
    if (t < 0.0)
      throw ConfigError("run.temperatures_nK", "temperatures must be non-negative");
  if (time.points < 2)
    throw ConfigError("time.points", "at least two points required");
  if (time.start < 0.0 || !(time.stop > time.start))
    throw ConfigError("time.stop", "time range must satisfy 0 <= start < stop");
  if (basis_K && *basis_K < 1)
    throw ConfigError("basis.K", "must be at least 1");
  if (sweep.depth_steps < 2)
    throw ConfigError("sweep.depth_steps", "a sweep needs at least two steps");
  if (sweep.frequency_steps < 2)
    throw ConfigError("sweep.frequency_steps", "a sweep needs at least two steps");
  if (!(sweep.depth_min_uK > 0.0) || !(sweep.depth_max_uK > sweep.depth_min_uK))
    throw ConfigError("sweep.depth_max_uK", "depth range must be positive and increasing");
  if (!(sweep.frequency_min_kHz > 0.0) || !(sweep.frequency_max_kHz > sweep.frequency_min_kHz))
    throw ConfigError("sweep.frequency_max_kHz", "frequency range must be positive and increasing");
  if (sweep.temperature_nK < 0.0)
    throw ConfigError("sweep.temperature_nK", "must be non-negative");
}

RunConfig parse_config_text(std::string_view text) {
  RunConfig config;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty())
      continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(std::string(line), "expected 'key = value'", line_no);
    assign(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), line_no);
  }
  config.validate();
  return config;
}

RunConfig parse_config(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ConfigError("config", fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

void apply_override(RunConfig &config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ConfigError(std::string(assignment), "override must look like key=value");
  assign(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), 0);
}

std::vector<std::string> known_keys() {
  std::vector<std::string> out;
  for (const auto &[key, entry] : table())
    out.push_back(key);
  return out;
}

} // namespace recap::cli
