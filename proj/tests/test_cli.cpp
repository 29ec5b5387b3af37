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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "recap/basis.hpp"
#include "recap/cli/commands.hpp"
#include "recap/cli/config.hpp"
#include "recap/cli/fingerprint.hpp"
#include "recap/cli/sweep.hpp"
#include "recap/units.hpp"

namespace fs = std::filesystem;
using namespace recap;
using namespace recap::cli;

namespace {

fs::path scratch(const std::string &name) {
  fs::path dir = fs::temp_directory_path() / ("recap_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Csv {
  std::map<std::string, std::string> header;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

std::vector<std::string> split(const std::string &line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
    out.push_back(cell);
  if (!line.empty() && line.back() == ',')
    out.emplace_back();
  return out;
}

Csv read_csv(const fs::path &p) {
  Csv csv;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("# ")) {
      auto colon = line.find(": ");
      if (colon != std::string::npos)
        csv.header[line.substr(2, colon - 2)] = line.substr(colon + 2);
    } else if (csv.columns.empty()) {
      csv.columns = split(line);
    } else if (!line.empty()) {
      csv.rows.push_back(split(line));
    }
  }
  return csv;
}

Context quiet(const RunConfig &config, const fs::path &dir, unsigned threads = 1) {
  Context ctx;
  ctx.config = config;
  ctx.out_dir = dir;
  ctx.threads = threads;
  return ctx;
}

RunConfig short_curves() {
  RunConfig c = parse_config_text("time.stop = 6\ntime.points = 31\n");
  c.validate();
  return c;
}

} // namespace

TEST_CASE("empty config resolves to the reference trap") {
  const RunConfig c = parse_config_text("");
  CHECK(c.trap.depth_uK == 50.0);
  CHECK(c.trap.trap_frequency_kHz == 25.0);
  CHECK(c.trap.atom_mass_amu == 87.90);
  CHECK(c.trap.temperature_nK == 730.0);
  CHECK(c.trap.c6_over_h_GHz_um6 == -154.0);
  CHECK(c.trap.interatomic_R_um == 3.0);
  CHECK(c.potentials.size() == 3);
  CHECK(c.temperatures_nK == std::vector<double>{0.0, 730.0});
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("parser accepts comments, lists and units") {
  const RunConfig c = parse_config_text(
      "# comment\n"
      "trap.depth_u0_uK = 80   # trailing\n"
      "run.potentials = IGauss, Free\n"
      "run.geometry = 1D, 2D\n"
      "run.temperatures_nK = 0, 100, 200\n"
      "time.unit = dimensionless\n"
      "basis.K = 70\n");
  CHECK(c.trap.depth_uK == 80.0);
  REQUIRE(c.potentials.size() == 2);
  CHECK(c.potentials[0] == PotentialKind::IGauss);
  CHECK(c.geometries.size() == 2);
  CHECK(c.temperatures_nK.size() == 3);
  CHECK(c.time.unit == TimeUnit::Dimensionless);
  CHECK(c.basis_size(41.0) == 70);
}

TEST_CASE("invalid configurations name the field") {
  SUBCASE("negative depth") {
    try {
      parse_config_text("trap.depth_u0_uK = -5\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
      CHECK(e.field() == "depth_U0");
      CHECK(std::string(e.what()).find("depth_U0: depth_U0") == std::string::npos);
    }
  }
  SUBCASE("single-step sweep") {
    CHECK_THROWS_AS(parse_config_text("sweep.depth_steps = 1\n"), ConfigError);
  }
  SUBCASE("empty time range") {
    CHECK_THROWS_AS(parse_config_text("time.start = 5\ntime.stop = 5\n"), ConfigError);
  }
  SUBCASE("unknown key carries its line") {
    try {
      parse_config_text("trap.depth_u0_uK = 50\n\ntrap.bogus = 1\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
      CHECK(e.line() == 3);
      CHECK(e.field() == "trap.bogus");
    }
  }
  SUBCASE("malformed line") {
    try {
      parse_config_text("trap.depth_u0_uK 50\n");
      FAIL("expected ConfigError");
    } catch (const ConfigError &e) {
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("override validated afterwards") {
    RunConfig c = parse_config_text("");
    apply_override(c, "trap.temperature_nK=-1");
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }
  SUBCASE("non-numeric value") {
    CHECK_THROWS_AS(parse_config_text("trap.frequency_kHz = fast\n"), ConfigError);
  }
  SUBCASE("unknown potential") {
    CHECK_THROWS_AS(parse_config_text("run.potentials = Harmonic\n"), ConfigError);
  }
}

TEST_CASE("overrides apply on top of the file") {
  RunConfig c = parse_config_text("trap.depth_u0_uK = 60\n");
  apply_override(c, "trap.depth_u0_uK=70");
  CHECK(c.trap.depth_uK == 70.0);
  apply_override(c, "solver.dt = 0.002");
  REQUIRE(c.solver.dt.has_value());
  CHECK(*c.solver.dt == 0.002);
  CHECK_THROWS_AS(apply_override(c, "no_equals_sign"), ConfigError);
  CHECK_THROWS_AS(apply_override(c, "nope=1"), ConfigError);
  const auto keys = known_keys();
  CHECK(std::is_sorted(keys.begin(), keys.end()));
  CHECK(std::find(keys.begin(), keys.end(), "trap.depth_u0_uK") != keys.end());
}

TEST_CASE("canonical form and fingerprint") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  const RunConfig a = parse_config_text("");
  const RunConfig b = parse_config_text("# only a comment\n");
  RunConfig c = a;
  c.trap.depth_uK = 51.0;
  CHECK(a.canonical() == b.canonical());
  CHECK(a.canonical() != c.canonical());
  const auto prov = provenance(a, "curve");
  std::map<std::string, std::string> m(prov.begin(), prov.end());
  CHECK(m.at("library_version") == RECAP_VERSION);
  CHECK(m.at("config_fingerprint") == "sha256:" + sha256_hex(a.canonical()));
}

TEST_CASE("bound-states at the reference trap") {
  const auto dir = scratch("bound");
  RunConfig c = parse_config_text("");
  REQUIRE(cmd_bound_states(quiet(c, dir)) == exit_ok);
  const Csv csv = read_csv(dir / "bound_states_1D.csv");
  const int count = std::stoi(csv.header.at("bound_count"));
  CHECK(std::abs(count - 48) <= 2);
  CHECK(std::stod(csv.header.at("u")) == doctest::Approx(41.6732).epsilon(1e-5));
  REQUIRE(static_cast<int>(csv.rows.size()) == count);

  const auto direct = basis::bound_states_1d(std::stod(csv.header.at("u")), std::stoi(csv.header.at("basis_K")));
  const auto parsed = basis::from_json(slurp(dir / "bound_basis_1D.json"));
  REQUIRE(parsed.count() == count);
  for (int j = 0; j < count; ++j) {
    const double e = std::stod(csv.rows[j][1]);
    CHECK(e == direct.energies[j]);
    CHECK(e == parsed.energies[j]);
  }
}

TEST_CASE("bound-states at unit depth") {
  const auto dir = scratch("unit");
  RunConfig c = parse_config_text("");
  const double omega = 2.0 * M_PI * c.trap.trap_frequency_kHz * 1e3;
  c.trap.depth_uK = units::codata::hbar * omega / units::codata::boltzmann * 1e6;
  c.validate();
  REQUIRE(cmd_bound_states(quiet(c, dir)) == exit_ok);
  const Csv csv = read_csv(dir / "bound_states_1D.csv");
  CHECK(std::stod(csv.header.at("u")) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(std::stoi(csv.header.at("bound_count")) >= 1);
}

TEST_CASE("curve writes one file per potential and temperature") {
  const auto dir = scratch("curve");
  const RunConfig c = short_curves();
  REQUIRE(cmd_curve(quiet(c, dir)) == exit_ok);
  const std::string fp = "sha256:" + sha256_hex(c.canonical());
  int files = 0;
  for (const char *pot : {"Free", "IHO", "IGauss"})
    for (const char *t : {"0", "730"}) {
      const fs::path p = dir / (std::string("curve_") + pot + "_1D_T" + t + "nK.csv");
      REQUIRE(fs::exists(p));
      ++files;
      const Csv csv = read_csv(p);
      CHECK(csv.header.at("library_version") == RECAP_VERSION);
      CHECK(csv.header.at("config_fingerprint") == fp);
      CHECK(csv.columns == std::vector<std::string>{"t_dimensionless", "t_seconds", "P"});
      CHECK(csv.rows.size() == 31);
      CHECK(std::stod(csv.rows.front()[2]) == doctest::Approx(1.0).epsilon(1e-9));
      for (const auto &row : csv.rows) {
        const double P = std::stod(row[2]);
        CHECK(P > -1e-12);
        CHECK(P < 1.0 + 1e-9);
      }
    }
  CHECK(files == 6);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
  const RunConfig c = short_curves();
  const auto a = scratch("det_a");
  const auto b = scratch("det_b");
  REQUIRE(cmd_curve(quiet(c, a, 1)) == exit_ok);
  REQUIRE(cmd_curve(quiet(c, b, 3)) == exit_ok);
  for (const auto &entry : fs::directory_iterator(a))
    CHECK(slurp(entry.path()) == slurp(b / entry.path().filename()));

  RunConfig s = parse_config_text("sweep.depth_steps = 2\nsweep.frequency_steps = 2\n");
  s.validate();
  REQUIRE(cmd_sweep(quiet(s, a, 1)) == exit_ok);
  REQUIRE(cmd_sweep(quiet(s, b, 2)) == exit_ok);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  const Csv sweep = read_csv(a / "sweep.csv");
  CHECK(sweep.rows.size() == 4);
}

TEST_CASE("sweep with failing cells is partial") {
  const auto dir = scratch("partial");
  RunConfig s = parse_config_text("sweep.depth_steps = 2\nsweep.frequency_steps = 2\nsolver.grid_extent = 30\n");
  s.validate();
  CHECK(cmd_sweep(quiet(s, dir, 2)) == exit_partial);
  const Csv sweep = read_csv(dir / "sweep.csv");
  REQUIRE(sweep.rows.size() == 4);
  for (const auto &row : sweep.rows)
    CHECK(row.back().starts_with("error"));
}

TEST_CASE("spread table") {
  const auto dir = scratch("spread");
  REQUIRE(cmd_spread(quiet(parse_config_text(""), dir)) == exit_ok);
  const Csv csv = read_csv(dir / "spread.csv");
  std::map<std::string, double> analytic;
  for (const auto &row : csv.rows)
    if (row[1] == "analytic-covariance")
      analytic[row[0]] = std::stod(row[2]);
  CHECK(analytic.at("IHO") == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(analytic.at("Free") == doctest::Approx(-0.25).epsilon(1e-9));
  CHECK(analytic.at("IGauss") == doctest::Approx(-0.98).epsilon(0.01));
}

TEST_CASE("timescales") {
  const auto dir = scratch("times");
  const RunConfig c = parse_config_text("");
  REQUIRE(cmd_timescales(quiet(c, dir), std::nullopt) == exit_ok);
  Csv csv = read_csv(dir / "timescales.csv");
  std::map<std::string, double> q;
  for (const auto &row : csv.rows)
    q[row[0]] = std::stod(row[1]);
  CHECK(q.count("tau_spin") == 0);
  CHECK(q.at("tau_int") == doctest::Approx(4.73e-9).epsilon(1e-3));
  CHECK(q.at("tau_mot") == doctest::Approx(6.366e-6).epsilon(1e-3));

  RunConfig r = c;
  apply_override(r, "trap.rabi_frequency_MHz = 2");
  REQUIRE(cmd_timescales(quiet(r, dir), std::nullopt) == exit_ok);
  csv = read_csv(dir / "timescales.csv");
  q.clear();
  for (const auto &row : csv.rows)
    q[row[0]] = std::stod(row[1]);
  CHECK(q.count("tau_spin") == 1);
}

TEST_CASE("report_failure maps exceptions to exit codes") {
  std::ostringstream err;
  CHECK(report_failure(ConfigError("trap.x", "bad"), err) == exit_config);
  CHECK(err.str().find("\"exit_code\":2") != std::string::npos);
  err.str("");
  CHECK(report_failure(NumericError("diverged"), err) == exit_numeric);
  CHECK(err.str().find("\"exit_code\":3") != std::string::npos);
}

TEST_CASE("binary exit codes") {
  const auto dir = scratch("binary");
  const std::string bin = RECAP_BINARY;
  const std::string err = (dir / "stderr.txt").string();
  const auto run = [&](const std::string &args) {
    const std::string cmd = "\"" + bin + "\" " + args + " --out \"" + dir.string() + "\" >/dev/null 2>\"" + err + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  };
  CHECK(run("timescales") == 0);
  CHECK(run("curve --override bogus=1") == 2);
  const std::string json = slurp(err);
  CHECK(json.find("\"status\":\"error\"") != std::string::npos);
  CHECK(json.find("\"field\":\"bogus\"") != std::string::npos);
  CHECK(run("curve --override trap.depth_u0_uK=-1") == 2);
  CHECK(run("frobnicate") == 2);
}
