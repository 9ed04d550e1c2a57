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

// Run configuration for the `qvi` command-line tool.
//
// A configuration is assembled from three layers, later ones winning:
// per-command defaults, an optional flat JSON document (--config), and
// command-line flags. Every key below is also a JSON key.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace qvi::cli {

enum class Command { kSolve, kTable1, kTable2, kRecovery, kRates, kRatio, kCertify };

std::string_view CommandName(Command command);
std::optional<Command> ParseCommand(std::string_view name);

struct RunConfig {
  Command command = Command::kSolve;

  // Solver parameters.
  double lambda1 = 1.0;
  double mu = 0.3;
  double xi_scale = 100.0;
  double xi_exp = 1.1;
  std::vector<double> tol = {1e-6};
  std::size_t max_iters = 500;
  // "step": ||u_{n+1} - u_n|| < tol, "squared": ||u_{n+1} - u_n||^2 < tol.
  std::string error = "step";

  // Output.
  std::uint64_t seed = 1;
  std::string out = ".";
  bool plot = false;

  // Problem selection (solve, rates, ratio): cubic | sine | piecewise |
  // recovery.
  std::string problem = "cubic";
  std::vector<double> u1;  // starting points; empty means command default
  std::optional<double> reference;  // u* for scalar ratio/rates runs
  double epsilon = 1.0;
  std::size_t tail_window = 20;

  // Recovery instance shape.
  std::size_t m = 256;
  std::size_t n = 512;
  std::size_t k = 20;
  std::size_t runs = 1;

  // Separation certificates.
  std::vector<std::vector<double>> points;
  std::string preset;  // "sine": 0 and the first count-1 zeros 2k pi + 3pi/2
  std::size_t count = 5;
  std::size_t samples = 10000;

  bool operator==(const RunConfig&) const = default;
};

// Defaults in effect for `command` before any file or flag is applied.
RunConfig DefaultConfig(Command command);

nlohmann::json ToJson(const RunConfig& cfg);

// Overlays the keys of `doc` (a flat JSON object) on `base`. Unknown keys and
// ill-typed values throw InputError naming the key.
RunConfig ApplyJson(RunConfig base, const nlohmann::json& doc);

// Throws InputError naming the offending key.
void Validate(const RunConfig& cfg);

// Parses argv. Returns nullopt when help was printed. Throws InputError for
// malformed input. `seed_env` is the value of QVI_SEED, if any.
std::optional<RunConfig> ParseConfig(int argc, const char* const* argv,
                                     std::optional<std::string> seed_env);

// Reads a config document from disk and layers it on DefaultConfig of the
// command named inside it.
RunConfig LoadConfigFile(const std::string& path);

}  // namespace qvi::cli
