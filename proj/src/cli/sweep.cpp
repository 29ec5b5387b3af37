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

#include "recap/cli/sweep.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fmt/ranges.h>

#include "recap/basis.hpp"
#include "recap/error.hpp"
#include "recap/units.hpp"

namespace recap::cli {

TimeSearch march_recapture_time(recapture::RecaptureEvaluator &evaluate, double t0_seconds,
                                double step, double t_max, double threshold) {
  recapture::RecaptureCurve curve;
  TimeSearch out;
  try {
    for (long k = 0;; ++k) {
      const double t = static_cast<double>(k) * step;
      if (t > t_max)
        break;
      const double v = evaluate(t);
      if (t > evaluate.validity_horizon())
        break;
      curve.times.push_back(t);
      curve.seconds.push_back(t * t0_seconds);
      curve.values.push_back(v);
      out.lower_bound = t;
      if (v <= threshold)
        break;
    }
  } catch (const StateLeftBoxError &) {
    // keep the samples gathered so far
  }
  out.validity_horizon = evaluate.validity_horizon();
  curve.validity_horizon = out.validity_horizon;
  if (curve.values.size() >= 2 && curve.values.back() <= threshold)
    out.tau = recapture::recapture_time(curve, t0_seconds, threshold,
                                        [&](double t) { return evaluate(t); });
  return out;
}

std::optional<double> SweepRow::ratio() const {
  if (!igauss.tau || !free.tau)
    return std::nullopt;
  return igauss.tau->dimensionless / free.tau->dimensionless;
}

bool SweepTable::complete() const {
  for (const auto &r : rows)
    if (!r.error.empty())
      return false;
  return true;
}

namespace {

SweepRow run_cell(const RunConfig &config, double depth, double frequency) {
  SweepRow row;
  row.depth_uK = depth;
  row.frequency_kHz = frequency;
  try {
    units::TrapConfig trap = config.trap;
    trap.depth_uK = depth;
    trap.trap_frequency_kHz = frequency;
    trap.validate();
    const auto model = units::build_model(trap);
    row.u = model.u;
    row.x_edge = units::trap_edge(model.u);
    row.K = config.basis_size(model.u);
    const auto bound = basis::bound_states_1d(model.u, row.K);
    const auto settings = config.settings(Geometry::OneD, model.u, row.K);
    const auto ensemble = recapture::thermal_ensemble(config.sweep.temperature_nK, model.omega);
    recapture::RecaptureEvaluator igauss(PotentialKind::IGauss, ensemble, bound, settings);
    row.igauss = march_recapture_time(igauss, model.t0);
    recapture::RecaptureEvaluator free(PotentialKind::Free, ensemble, bound, settings);
    row.free = march_recapture_time(free, model.t0);
  } catch (const std::exception &e) {
    row.error = e.what();
  }
  return row;
}

std::string field(const TimeSearch &s, bool seconds) {
  if (!s.tau)
    return "";
  return fmt::format("{:.17g}", seconds ? s.tau->seconds : s.tau->dimensionless);
}

} // namespace

SweepTable run_sweep(const RunConfig &config, unsigned threads) {
  const auto depths = config.sweep.depths();
  const auto freqs = config.sweep.frequencies();
  SweepTable table;
  table.rows.resize(depths.size() * freqs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < table.rows.size(); i = next++)
      table.rows[i] = run_cell(config, depths[i / freqs.size()], freqs[i % freqs.size()]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(table.rows.size())));
  std::vector<std::jthread> pool;
  for (unsigned k = 1; k < n; ++k)
    pool.emplace_back(worker);
  worker();
  pool.clear();
  return table;
}

void write_sweep(std::ostream &out, const SweepTable &table,
                 const std::vector<std::pair<std::string, std::string>> &header) {
  for (const auto &[key, value] : header)
    fmt::print(out, "# {}: {}\n", key, value);
  fmt::print(out, "depth_uK,frequency_kHz,u,K,X_edge,tau_IGauss,tau_IGauss_s,tau_Free,tau_Free_s,ratio,flags\n");
  for (const auto &r : table.rows) {
    std::vector<std::string> flags;
    if (!r.error.empty()) {
      std::string msg = r.error;
      for (auto &c : msg)
        if (c == ',' || c == '"' || c == '\n')
          c = ' ';
      flags.push_back("error: " + msg);
    } else {
      if (!r.igauss.tau)
        flags.push_back(fmt::format("IGauss beyond horizon (>= {:.6g})", r.igauss.lower_bound));
      if (!r.free.tau)
        flags.push_back(fmt::format("Free beyond horizon (>= {:.6g})", r.free.lower_bound));
    }
    const auto ratio = r.ratio();
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{},{:.17g},{},{},{},{},{},{}\n", r.depth_uK, r.frequency_kHz,
               r.u, r.K, r.x_edge, field(r.igauss, false), field(r.igauss, true), field(r.free, false),
               field(r.free, true), ratio ? fmt::format("{:.17g}", *ratio) : "",
               fmt::format("{}", fmt::join(flags, "; ")));
  }
}

} // namespace recap::cli
