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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "recap/cli/commands.hpp"
#include "recap/cli/config.hpp"

int main(int argc, char **argv) {
  using namespace recap::cli;

  CLI::App app{"Recapture probability of anti-trapped Rydberg atoms in optical tweezers"};
  app.set_version_flag("--version", RECAP_VERSION);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  unsigned threads = 1;
  std::vector<std::string> overrides;
  std::string curve_path;

  app.add_option("--config", config_path, "configuration file (dotted key = value)");
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->envname("RECAP_THREADS")->check(CLI::Range(1u, 1024u));
  app.add_option("--override", overrides, "key=value applied after the config file")->take_all();

  auto *bound = app.add_subcommand("bound-states", "bound states of the trapping Gaussian");
  auto *curve = app.add_subcommand("curve", "recapture curves per potential, geometry and temperature");
  auto *sweep = app.add_subcommand("sweep", "recapture times over a (depth, frequency) grid");
  auto *spread = app.add_subcommand("spread", "initial quantum spread P''(0)");
  auto *times = app.add_subcommand("timescales", "characteristic timescales");
  times->add_option("--curve", curve_path, "curve file whose recapture time is reported");
  for (auto *sub : {bound, curve, sweep, spread, times})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_config;
  }

  try {
    Context ctx;
    ctx.config = config_path.empty() ? parse_config_text("") : parse_config(config_path);
    for (const auto &o : overrides)
      apply_override(ctx.config, o);
    ctx.config.validate();
    ctx.out_dir = out_dir;
    ctx.threads = threads;
    ctx.log = &std::cout;

    if (*bound)
      return cmd_bound_states(ctx);
    if (*curve)
      return cmd_curve(ctx);
    if (*sweep)
      return cmd_sweep(ctx);
    if (*spread)
      return cmd_spread(ctx);
    return cmd_timescales(ctx, curve_path.empty() ? std::nullopt
                                                  : std::optional<std::filesystem::path>(curve_path));
  } catch (const std::exception &e) {
    return report_failure(e, std::cerr);
  }
}
