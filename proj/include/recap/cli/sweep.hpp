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

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recap/cli/config.hpp"
#include "recap/recapture.hpp"

namespace recap::cli {

/// Recapture time found by marching a curve forward until it crosses the threshold.
struct TimeSearch {
  std::optional<recapture::RecaptureTime> tau;
  /// Last time known to stay above threshold when tau is absent (dimensionless).
  double lower_bound = 0.0;
  double validity_horizon = 0.0;
};

/// Samples `evaluate` every `step` up to `t_max`, stopping at the first crossing, then
/// refines by bisection. A state leaving the box ends the search with a lower bound.
TimeSearch march_recapture_time(recapture::RecaptureEvaluator &evaluate, double t0_seconds,
                                double step = 0.05, double t_max = 40.0,
                                double threshold = recapture::default_threshold);

struct SweepRow {
  double depth_uK = 0.0;
  double frequency_kHz = 0.0;
  double u = 0.0;
  int K = 0;
  double x_edge = 0.0;
  TimeSearch igauss;
  TimeSearch free;
  std::string error;  ///< non-empty when the cell failed

  /// tau_IGauss / tau_Free when both are finite.
  std::optional<double> ratio() const;
};

struct SweepTable {
  std::vector<SweepRow> rows;  ///< depth-major, frequency-minor
  bool complete() const;
};

/// Independent cells evaluated on `threads` workers; row order never depends on scheduling.
SweepTable run_sweep(const RunConfig &config, unsigned threads);

void write_sweep(std::ostream &out, const SweepTable &table,
                 const std::vector<std::pair<std::string, std::string>> &header);

} // namespace recap::cli
