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

#include "recap/cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <json.hpp>

#include "recap/basis.hpp"
#include "recap/cli/fingerprint.hpp"
#include "recap/cli/sweep.hpp"
#include "recap/error.hpp"
#include "recap/recapture.hpp"
#include "recap/specfun.hpp"
#include "recap/units.hpp"

namespace recap::cli {

namespace {

using Header = std::vector<std::pair<std::string, std::string>>;

std::ofstream open_output(const Context &ctx, const std::string &name) {
  std::filesystem::create_directories(ctx.out_dir);
  const auto path = ctx.out_dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw Error(fmt::format("cannot write '{}'", path.string()));
  return out;
}

template <class... Args> void note(const Context &ctx, fmt::format_string<Args...> f, Args &&...args) {
  if (ctx.log)
    fmt::print(*ctx.log, "{}\n", fmt::format(f, std::forward<Args>(args)...));
}

void print_header(std::ostream &out, const Header &h) {
  for (const auto &[k, v] : h)
    fmt::print(out, "# {}: {}\n", k, v);
}

std::string g17(double v) { return fmt::format("{:.17g}", v); }

basis::BoundBasis bound_for(Geometry g, double u, int K) {
  return g == Geometry::OneD ? basis::bound_states_1d(u, K) : basis::bound_states_2d(u, K, 0);
}

std::string geometry_tag(Geometry g) { return g == Geometry::OneD ? "1D" : "2D"; }

struct CurveResult {
  recapture::RecaptureCurve curve;
  std::vector<std::string> warnings;
  std::string tau_text;
};

/// Recapture time of a computed curve, as header text.
std::string describe_tau(const recapture::RecaptureCurve &curve, double t0,
                         const std::function<double(double)> &refine) {
  try {
    const auto tau = recapture::recapture_time(curve, t0, recapture::default_threshold, refine);
    return fmt::format("{:.6g} (dimensionless), {:.6g} s", tau.dimensionless, tau.seconds);
  } catch (const BeyondHorizonError &e) {
    return fmt::format("beyond horizon, at least {:.6g} (dimensionless)", e.lower_bound());
  } catch (const ContractError &e) {
    return fmt::format("undefined: {}", e.what());
  }
}

CurveResult compute_curve(const Context &ctx, const units::DimensionlessModel &model, PotentialKind potential,
                          Geometry g, double temperature, int K) {
  const auto bound = bound_for(g, model.u, K);
  const auto settings = ctx.config.settings(g, model.u, K);
  const auto times = ctx.config.sample_times(model.t0);
  const auto ensemble = recapture::thermal_ensemble(temperature, model.omega);
  recapture::RecaptureEvaluator evaluator(potential, ensemble, bound, settings, ctx.threads);
  CurveResult r;
  auto &c = r.curve;
  c.potential = potential;
  c.geometry = g;
  c.temperature_nK = temperature;
  c.cutoff_N = ensemble.cutoff_N;
  c.settings_fingerprint = sha256_hex(fmt::format(
      "dt={};N={};L={};aw={};as={};K={};u={}", g17(settings.dt), settings.grid_points,
      g17(settings.grid_extent), g17(settings.absorber_width), g17(settings.absorber_strength), K, g17(model.u)));
  try {
    for (double t : times) {
      const double v = evaluator(t);
      c.times.push_back(t);
      c.seconds.push_back(model.to_seconds(t));
      c.values.push_back(v);
    }
  } catch (const StateLeftBoxError &e) {
    r.warnings.push_back(fmt::format("truncated: {}", e.what()));
  }
  c.validity_horizon = evaluator.validity_horizon();
  std::size_t keep = c.times.size();
  while (keep > 0 && c.times[keep - 1] > c.validity_horizon)
    --keep;
  if (keep < c.times.size()) {
    r.warnings.push_back(fmt::format("rows after the validity horizon t = {:.6g} removed", c.validity_horizon));
    c.times.resize(keep);
    c.seconds.resize(keep);
    c.values.resize(keep);
  }
  if (c.times.empty())
    throw NumericError("no trustworthy samples in the requested time range");
  r.tau_text = describe_tau(c, model.t0, [&](double t) { return evaluator(t); });
  return r;
}

void write_curve_file(const Context &ctx, const std::string &name, const CurveResult &r, int K) {
  auto out = open_output(ctx, name);
  Header h = provenance(ctx.config, "curve");
  h.emplace_back("basis_K", fmt::format("{}", K));
  h.emplace_back("tau_recap", r.tau_text);
  recapture::write_curve(out, r.curve, h);
  for (const auto &w : r.warnings)
    fmt::print(out, "# warning: {}\n", w);
}

} // namespace

std::vector<std::pair<std::string, std::string>> provenance(const RunConfig &config, std::string_view command) {
  return {{"library_version", RECAP_VERSION},
          {"command", std::string(command)},
          {"config_fingerprint", "sha256:" + sha256_hex(config.canonical())}};
}

int cmd_bound_states(const Context &ctx) {
  const auto model = units::build_model(ctx.config.trap);
  const int K = ctx.config.basis_size(model.u);
  for (Geometry g : ctx.config.geometries) {
    const auto bound = bound_for(g, model.u, K);
    const std::string tag = geometry_tag(g);
    {
      auto out = open_output(ctx, fmt::format("bound_states_{}.csv", tag));
      Header h = provenance(ctx.config, "bound-states");
      h.emplace_back("geometry", std::string(to_string(g)));
      h.emplace_back("u", g17(model.u));
      h.emplace_back("basis_K", fmt::format("{}", K));
      h.emplace_back("bound_count", fmt::format("{}", bound.count()));
      h.emplace_back("borderline_excluded", fmt::format("{}", bound.borderline.size()));
      print_header(out, h);
      fmt::print(out, "index,energy\n");
      for (int i = 0; i < bound.count(); ++i)
        fmt::print(out, "{},{:.17g}\n", i, bound.energies[static_cast<std::size_t>(i)]);
    }
    {
      auto out = open_output(ctx, fmt::format("bound_basis_{}.json", tag));
      out << basis::to_json(bound) << '\n';
    }
    if (ctx.config.eigenfunctions) {
      auto out = open_output(ctx, fmt::format("eigenfunctions_{}.csv", tag));
      Header h = provenance(ctx.config, "bound-states");
      h.emplace_back("geometry", std::string(to_string(g)));
      h.emplace_back("u", g17(model.u));
      print_header(out, h);
      fmt::print(out, "{},potential", g == Geometry::OneD ? "x" : "r");
      for (int n = 0; n < bound.count(); ++n)
        fmt::print(out, ",psi_{}", n);
      fmt::print(out, "\n");
      const double reach = 1.5 * units::trap_edge(model.u);
      const int samples = 601;
      std::vector<double> column(static_cast<std::size_t>(K) + 1);
      const Potential well{PotentialKind::Gauss, model.u};
      for (int i = 0; i < samples; ++i) {
        const double x = g == Geometry::OneD ? -reach + 2.0 * reach * i / (samples - 1) : reach * i / (samples - 1);
        if (g == Geometry::OneD)
          specfun::ho_wavefunctions_1d(x, column);
        else
          specfun::ho_radial_2d(x, 0, column);
        const Eigen::Map<const Eigen::VectorXd> phi(column.data(), K + 1);
        fmt::print(out, "{:.17g},{:.17g}", x, well(x));
        for (int n = 0; n < bound.count(); ++n)
          fmt::print(out, ",{:.17g}", bound.coefficients.col(n).dot(phi));
        fmt::print(out, "\n");
      }
    }
    note(ctx, "u = {:.6g}, K = {}, {} bound states ({})", model.u, K, bound.count(), to_string(g));
  }
  return exit_ok;
}

int cmd_curve(const Context &ctx) {
  const auto model = units::build_model(ctx.config.trap);
  const int K = ctx.config.basis_size(model.u);
  for (Geometry g : ctx.config.geometries) {
    for (PotentialKind p : ctx.config.potentials) {
      for (double T : ctx.config.temperatures_nK) {
        const auto r = compute_curve(ctx, model, p, g, T, K);
        const std::string name = fmt::format("curve_{}_{}_T{:g}nK.csv", to_string(p), geometry_tag(g), T);
        write_curve_file(ctx, name, r, K);
        note(ctx, "{}: tau_recap {}", name, r.tau_text);
        if (g == Geometry::Radial2D) {
          auto one_d = compute_curve(ctx, model, p, Geometry::OneD, T, K);
          CurveResult squared{recapture::recapture_2d_from_1d(one_d.curve), one_d.warnings, ""};
          squared.tau_text = describe_tau(squared.curve, model.t0, {});
          const std::string sq = fmt::format("curve_{}_2D-squared_T{:g}nK.csv", to_string(p), T);
          write_curve_file(ctx, sq, squared, K);
          note(ctx, "{}: tau_recap {}", sq, squared.tau_text);
        }
      }
    }
  }
  return exit_ok;
}

int cmd_sweep(const Context &ctx) {
  const SweepTable table = run_sweep(ctx.config, ctx.threads);
  auto out = open_output(ctx, "sweep.csv");
  Header h = provenance(ctx.config, "sweep");
  h.emplace_back("temperature_nK", g17(ctx.config.sweep.temperature_nK));
  h.emplace_back("threshold", g17(recapture::default_threshold));
  write_sweep(out, table, h);
  for (const auto &r : table.rows) {
    const auto ratio = r.ratio();
    note(ctx, "U0 = {:g} uK, f = {:g} kHz: ratio {}{}", r.depth_uK, r.frequency_kHz,
         ratio ? fmt::format("{:.4f}", *ratio) : "n/a", r.error.empty() ? "" : " (failed: " + r.error + ")");
  }
  return table.complete() ? exit_ok : exit_partial;
}

int cmd_spread(const Context &ctx) {
  const auto model = units::build_model(ctx.config.trap);
  const int K = ctx.config.basis_size(model.u);
  const auto settings = ctx.config.settings(Geometry::OneD, model.u, K);
  const auto psi0 = evolve::StateVector::eigenstate(Geometry::OneD, 0);
  auto out = open_output(ctx, "spread.csv");
  Header h = provenance(ctx.config, "spread");
  h.emplace_back("u", g17(model.u));
  print_header(out, h);
  fmt::print(out, "potential,method,value\n");
  for (PotentialKind p : ctx.config.potentials) {
    for (auto m : {recapture::SpreadMethod::AnalyticCovariance, recapture::SpreadMethod::FiniteDifference}) {
      const auto r = recapture::initial_quantum_spread(Potential{p, model.u}, psi0, m, settings);
      fmt::print(out, "{},{},{:.17g}\n", to_string(p), recapture::to_string(m), r.value);
      note(ctx, "{} {}: {:.6f}", to_string(p), recapture::to_string(m), r.value);
    }
  }
  return exit_ok;
}

int cmd_timescales(const Context &ctx, const std::optional<std::filesystem::path> &curve_path) {
  const auto model = units::build_model(ctx.config.trap);
  auto report = units::timescales(ctx.config.trap);
  std::string recap_text;
  if (curve_path) {
    std::ifstream in(*curve_path, std::ios::binary);
    if (!in)
      throw ConfigError("curve", fmt::format("cannot open '{}'", curve_path->string()));
    const auto curve = recapture::read_curve(in);
    double t0 = model.t0;
    for (std::size_t i = 0; i < curve.times.size(); ++i)
      if (curve.times[i] > 0.0) {
        t0 = curve.seconds[i] / curve.times[i];
        break;
      }
    try {
      report.tau_recap = recapture::recapture_time(curve, t0).seconds;
    } catch (const BeyondHorizonError &e) {
      recap_text = fmt::format("beyond horizon, at least {:.6g} s", e.lower_bound() * t0);
    }
  }
  auto out = open_output(ctx, "timescales.csv");
  print_header(out, provenance(ctx.config, "timescales"));
  fmt::print(out, "quantity,seconds\n");
  if (report.tau_spin) {
    fmt::print(out, "tau_spin,{:.17g}\n", *report.tau_spin);
    note(ctx, "tau_spin  = {:.4g} s", *report.tau_spin);
  }
  fmt::print(out, "tau_mot,{:.17g}\n", report.tau_mot);
  fmt::print(out, "tau_int,{:.17g}\n", report.tau_int);
  note(ctx, "tau_mot   = {:.4g} s", report.tau_mot);
  note(ctx, "tau_int   = {:.4g} s", report.tau_int);
  if (ctx.config.trap.rayleigh_range_um) {
    const double wz = units::axial_frequency(ctx.config.trap);
    fmt::print(out, "axial_period_over_2pi,{:.17g}\n", 1.0 / wz);
    note(ctx, "1/omega_z = {:.4g} s", 1.0 / wz);
  }
  if (report.tau_recap) {
    fmt::print(out, "tau_recap,{:.17g}\n", *report.tau_recap);
    fmt::print(out, "tau_recap_over_tau_int,{:.17g}\n", *report.tau_recap / report.tau_int);
    note(ctx, "tau_recap = {:.4g} s, tau_recap / tau_int = {:.4g}", *report.tau_recap,
         *report.tau_recap / report.tau_int);
  } else if (!recap_text.empty()) {
    fmt::print(out, "# tau_recap: {}\n", recap_text);
    note(ctx, "tau_recap {}", recap_text);
  }
  return exit_ok;
}

int report_failure(const std::exception &e, std::ostream &err) {
  int code = exit_numeric;
  std::string kind = "error";
  if (dynamic_cast<const ConfigError *>(&e) || dynamic_cast<const ValidationError *>(&e)) {
    code = exit_config;
    kind = "config";
  } else if (dynamic_cast<const StateLeftBoxError *>(&e)) {
    kind = "state-left-box";
  } else if (dynamic_cast<const NumericError *>(&e)) {
    kind = "numeric";
  } else if (dynamic_cast<const CapabilityError *>(&e)) {
    kind = "capability";
  } else if (dynamic_cast<const ContractError *>(&e)) {
    kind = "contract";
  }
  nlohmann::ordered_json j;
  j["status"] = "error";
  j["kind"] = kind;
  j["exit_code"] = code;
  j["message"] = e.what();
  if (const auto *v = dynamic_cast<const ValidationError *>(&e))
    j["field"] = v->field();
  err << j.dump() << '\n';
  return code;
}

} // namespace recap::cli
