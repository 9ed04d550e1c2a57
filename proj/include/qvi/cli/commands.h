// Copyright 2026 The qvi Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <ostream>

#include "qvi/cli/config.h"

namespace qvi::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,  // I/O and anything unexpected
  kExitInputError = 2,
  kExitNumericError = 3,
};

// Path of the CSV a command writes: <out>/<command>.csv.
std::filesystem::path CsvPath(const RunConfig& cfg);

// Runs one command, writing its CSV (and SVGs with plot = true) and a short
// human-readable summary to `log`. Throws on failure.
void Execute(const RunConfig& cfg, std::ostream& log);

// Full tool entry point: parses argv, executes, maps exceptions to exit codes.
int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err);

}  // namespace qvi::cli
