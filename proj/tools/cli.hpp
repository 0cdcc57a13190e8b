// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace affwave::cli {

/// Exit codes shared by every subcommand.
enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kInputError = 2,
  kNumericalError = 3,
};

/// Entry point of the `affwave` tool. Never throws.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
/// Same, with `args` excluding the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Thread count used by the commands: --threads when given (> 0), else the
/// AFFWAVE_THREADS environment variable, else the config value, else the
/// hardware default.
unsigned effective_threads(unsigned flag, unsigned config);

/// Sidecar path for a CSV output: `x.csv` -> `x.meta.json`, otherwise the
/// suffix appended.
std::string sidecar_path(const std::string& csv_path, const std::string& suffix = ".meta.json");

}  // namespace affwave::cli
