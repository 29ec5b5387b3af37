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
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recap/cli/config.hpp"

namespace recap::cli {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numeric = 3, exit_partial = 4 };

struct Context {
  RunConfig config;
  std::filesystem::path out_dir = ".";
  unsigned threads = 1;
  std::ostream *log = nullptr;  ///< human-readable progress, may be null
};

/// Header lines shared by every output file: library version and config fingerprint.
std::vector<std::pair<std::string, std::string>> provenance(const RunConfig &config,
                                                            std::string_view command);

int cmd_bound_states(const Context &ctx);
int cmd_curve(const Context &ctx);
int cmd_sweep(const Context &ctx);
int cmd_spread(const Context &ctx);
int cmd_timescales(const Context &ctx, const std::optional<std::filesystem::path> &curve);

/// Maps an exception escaping a command to an exit code and a one-line JSON summary.
int report_failure(const std::exception &e, std::ostream &err);

} // namespace recap::cli
