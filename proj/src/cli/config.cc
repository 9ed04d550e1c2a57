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

#include "qvi/cli/config.h"

#include <array>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"
#include "qvi/linalg.h"

namespace qvi::cli {
namespace {

using nlohmann::json;

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands = {{
    {Command::kSolve, "solve"},
    {Command::kTable1, "table1"},
    {Command::kTable2, "table2"},
    {Command::kRecovery, "recovery"},
    {Command::kRates, "rates"},
    {Command::kRatio, "ratio"},
    {Command::kCertify, "certify"},
}};

[[noreturn]] void BadKey(std::string_view key, std::string_view why) {
  throw InputError(std::string(key) + ": " + std::string(why));
}

double GetDouble(const json& v, std::string_view key) {
  if (!v.is_number()) BadKey(key, "expected a number");
  return v.get<double>();
}

std::size_t GetCount(const json& v, std::string_view key) {
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) {
    return v.get<std::size_t>();
  }
  BadKey(key, "expected a non-negative integer");
}

std::string GetString(const json& v, std::string_view key) {
  if (!v.is_string()) BadKey(key, "expected a string");
  return v.get<std::string>();
}

// A number or an array of numbers.
std::vector<double> GetDoubles(const json& v, std::string_view key) {
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) BadKey(key, "expected a number or an array of numbers");
  std::vector<double> out;
  for (const json& e : v) out.push_back(GetDouble(e, key));
  return out;
}

std::vector<std::vector<double>> GetPoints(const json& v, std::string_view key) {
  if (!v.is_array()) BadKey(key, "expected an array of points");
  std::vector<std::vector<double>> out;
  for (const json& p : v) out.push_back(GetDoubles(p, key));
  return out;
}

// "1.5,2" -> {1.5, 2}
std::vector<double> ParseCoordinates(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      BadKey("point", "cannot parse coordinate '" + item + "'");
    }
  }
  if (out.empty()) BadKey("point", "empty point");
  return out;
}

std::uint64_t ParseSeedEnv(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    BadKey("QVI_SEED", "expected a non-negative integer, got '" + text + "'");
  }
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) BadKey("config", "cannot open '" + path + "'");
  try {
    json doc = json::parse(in);
    if (!doc.is_object()) BadKey("config", "top level must be an object");
    return doc;
  } catch (const json::parse_error& e) {
    BadKey("config", std::string("malformed JSON: ") + e.what());
  }
}

// Flags that were given on the command line, collected as JSON.
struct FlagSet {
  std::vector<std::function<void(json&)>> collectors;

  template <class T>
  void Add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    collectors.push_back([opt, value, key](json& doc) {
      if (opt->count() > 0) doc[key] = *value;
    });
  }

  void AddFlag(CLI::App* app, const std::string& flag, const std::string& key,
               const std::string& help) {
    CLI::Option* opt = app->add_flag(flag, help);
    collectors.push_back([opt, key](json& doc) {
      if (opt->count() > 0) doc[key] = true;
    });
  }

  json Collect() const {
    json doc = json::object();
    for (const auto& c : collectors) c(doc);
    return doc;
  }
};

void AddSharedFlags(CLI::App* app, FlagSet& flags) {
  flags.Add<double>(app, "--lambda1", "lambda1", "Initial step size");
  flags.Add<double>(app, "--mu", "mu", "Step-size safety factor in (0,1)");
  flags.Add<double>(app, "--xi-scale", "xi_scale", "xi_n = scale/(n+1)^exp");
  flags.Add<double>(app, "--xi-exp", "xi_exp", "Exponent of xi_n, > 1");
  flags.Add<std::vector<double>>(app, "--tol", "tol",
                                 "Stopping tolerance (repeatable)");
  flags.Add<std::size_t>(app, "--max-iters", "max_iters", "Iteration cap");
  flags.Add<std::uint64_t>(app, "--seed", "seed", "Random seed");
  flags.Add<std::string>(app, "--out", "out", "Output directory");
  flags.AddFlag(app, "--plot", "plot", "Write SVG plots next to the CSV");
  flags.Add<std::string>(app, "--error", "error",
                         "Stopping error: step (default) or squared");
}

}  // namespace

std::string_view CommandName(Command command) {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return "unknown";
}

std::optional<Command> ParseCommand(std::string_view name) {
  for (const auto& [c, n] : kCommands) {
    if (n == name) return c;
  }
  return std::nullopt;
}

RunConfig DefaultConfig(Command command) {
  RunConfig cfg;
  cfg.command = command;
  switch (command) {
    case Command::kTable1:
      cfg.tol = {1e-6, 1e-8};
      break;
    case Command::kTable2:
      cfg.mu = 0.5;
      cfg.tol = {1e-6, 1e-8};
      cfg.problem = "sine";
      break;
    case Command::kRecovery:
      cfg.lambda1 = 0.1;
      cfg.max_iters = 2000;
      cfg.problem = "recovery";
      break;
    default:
      break;
  }
  return cfg;
}

json ToJson(const RunConfig& cfg) {
  json doc = {
      {"command", std::string(CommandName(cfg.command))},
      {"lambda1", cfg.lambda1},
      {"mu", cfg.mu},
      {"xi_scale", cfg.xi_scale},
      {"xi_exp", cfg.xi_exp},
      {"tol", cfg.tol},
      {"max_iters", cfg.max_iters},
      {"error", cfg.error},
      {"seed", cfg.seed},
      {"out", cfg.out},
      {"plot", cfg.plot},
      {"problem", cfg.problem},
      {"u1", cfg.u1},
      {"epsilon", cfg.epsilon},
      {"tail_window", cfg.tail_window},
      {"M", cfg.m},
      {"N", cfg.n},
      {"K", cfg.k},
      {"runs", cfg.runs},
      {"points", cfg.points},
      {"preset", cfg.preset},
      {"count", cfg.count},
      {"samples", cfg.samples},
  };
  if (cfg.reference) doc["reference"] = *cfg.reference;
  return doc;
}

RunConfig ApplyJson(RunConfig cfg, const json& doc) {
  if (!doc.is_object()) BadKey("config", "expected a JSON object");
  for (const auto& [key, v] : doc.items()) {
    if (key == "command") {
      const auto cmd = ParseCommand(GetString(v, key));
      if (!cmd) BadKey(key, "unknown command '" + v.get<std::string>() + "'");
      cfg.command = *cmd;
    } else if (key == "lambda1") {
      cfg.lambda1 = GetDouble(v, key);
    } else if (key == "mu") {
      cfg.mu = GetDouble(v, key);
    } else if (key == "xi_scale") {
      cfg.xi_scale = GetDouble(v, key);
    } else if (key == "xi_exp") {
      cfg.xi_exp = GetDouble(v, key);
    } else if (key == "tol") {
      cfg.tol = GetDoubles(v, key);
    } else if (key == "max_iters") {
      cfg.max_iters = GetCount(v, key);
    } else if (key == "error") {
      cfg.error = GetString(v, key);
    } else if (key == "seed") {
      cfg.seed = GetCount(v, key);
    } else if (key == "out") {
      cfg.out = GetString(v, key);
    } else if (key == "plot") {
      if (!v.is_boolean()) BadKey(key, "expected true or false");
      cfg.plot = v.get<bool>();
    } else if (key == "problem") {
      cfg.problem = GetString(v, key);
    } else if (key == "u1") {
      cfg.u1 = GetDoubles(v, key);
    } else if (key == "reference") {
      if (v.is_null()) {
        cfg.reference.reset();
      } else {
        cfg.reference = GetDouble(v, key);
      }
    } else if (key == "epsilon") {
      cfg.epsilon = GetDouble(v, key);
    } else if (key == "tail_window") {
      cfg.tail_window = GetCount(v, key);
    } else if (key == "M") {
      cfg.m = GetCount(v, key);
    } else if (key == "N") {
      cfg.n = GetCount(v, key);
    } else if (key == "K") {
      cfg.k = GetCount(v, key);
    } else if (key == "runs") {
      cfg.runs = GetCount(v, key);
    } else if (key == "points") {
      cfg.points = GetPoints(v, key);
    } else if (key == "preset") {
      cfg.preset = GetString(v, key);
    } else if (key == "count") {
      cfg.count = GetCount(v, key);
    } else if (key == "samples") {
      cfg.samples = GetCount(v, key);
    } else {
      BadKey(key, "unknown key");
    }
  }
  return cfg;
}

void Validate(const RunConfig& cfg) {
  if (!(cfg.lambda1 > 0.0) || !std::isfinite(cfg.lambda1)) {
    BadKey("lambda1", "must be finite and > 0");
  }
  if (!(cfg.mu > 0.0 && cfg.mu < 1.0)) BadKey("mu", "must lie in (0, 1)");
  if (!(cfg.xi_scale >= 0.0) || !std::isfinite(cfg.xi_scale)) {
    BadKey("xi_scale", "must be finite and >= 0");
  }
  if (!(cfg.xi_exp > 1.0) || !std::isfinite(cfg.xi_exp)) {
    BadKey("xi_exp", "must be finite and > 1");
  }
  if (cfg.tol.empty()) BadKey("tol", "at least one tolerance is required");
  for (const double t : cfg.tol) {
    if (!(t > 0.0)) BadKey("tol", "tolerances must be > 0");
  }
  if (cfg.max_iters == 0) BadKey("max_iters", "must be >= 1");
  if (cfg.error != "step" && cfg.error != "squared") {
    BadKey("error", "must be 'step' or 'squared'");
  }
  if (cfg.out.empty()) BadKey("out", "must not be empty");
  for (const double u : cfg.u1) {
    if (!std::isfinite(u)) BadKey("u1", "starting points must be finite");
  }
  if (!(cfg.epsilon >= 0.0)) BadKey("epsilon", "must be >= 0");
  if (cfg.tail_window < 3) BadKey("tail_window", "must be >= 3");

  const bool scalar_problem = cfg.problem == "cubic" || cfg.problem == "sine" ||
                              cfg.problem == "piecewise";
  switch (cfg.command) {
    case Command::kSolve:
      if (!scalar_problem) {
        BadKey("problem", "solve supports cubic, sine or piecewise");
      }
      break;
    case Command::kRates:
    case Command::kRatio:
      if (!scalar_problem && cfg.problem != "recovery") {
        BadKey("problem", "must be cubic, sine, piecewise or recovery");
      }
      break;
    default:
      break;
  }
  if (cfg.command == Command::kRecovery || cfg.problem == "recovery") {
    if (cfg.m == 0) BadKey("M", "must be >= 1");
    if (cfg.n == 0) BadKey("N", "must be >= 1");
    if (cfg.k > cfg.n) BadKey("K", "must not exceed N");
    if (cfg.runs == 0) BadKey("runs", "must be >= 1");
  }
  if (cfg.command == Command::kCertify) {
    if (!cfg.preset.empty() && cfg.preset != "sine") {
      BadKey("preset", "only 'sine' is available");
    }
    if (cfg.preset.empty() && cfg.points.size() < 2) {
      BadKey("points", "need at least two points (or --preset sine)");
    }
    if (!cfg.preset.empty() && cfg.count < 2) BadKey("count", "must be >= 2");
    if (cfg.samples == 0) BadKey("samples", "must be >= 1");
  }
}

RunConfig LoadConfigFile(const std::string& path) {
  const json doc = ReadJsonFile(path);
  Command command = Command::kSolve;
  if (doc.contains("command")) {
    const auto cmd = ParseCommand(GetString(doc["command"], "command"));
    if (!cmd) BadKey("command", "unknown command");
    command = *cmd;
  }
  RunConfig cfg = ApplyJson(DefaultConfig(command), doc);
  Validate(cfg);
  return cfg;
}

std::optional<RunConfig> ParseConfig(int argc, const char* const* argv,
                                     std::optional<std::string> seed_env) {
  CLI::App app{"Self-adaptive Tseng extragradient solver and diagnostics"};
  app.require_subcommand(1);

  struct Sub {
    Command command;
    CLI::App* app;
    FlagSet flags;
    std::string config_path;
    std::vector<std::string> points;
  };
  std::vector<std::unique_ptr<Sub>> subs;

  const std::array<std::pair<Command, const char*>, 7> descriptions = {{
      {Command::kSolve, "Run the solver on a scalar example and trace it"},
      {Command::kTable1, "Reproduce the (1-|z|)z table"},
      {Command::kTable2, "Reproduce the 1+sin(z) table"},
      {Command::kRecovery, "Sparse signal recovery runs"},
      {Command::kRates, "Convergence-rate estimate of a run"},
      {Command::kRatio, "Growth-ratio series of a run"},
      {Command::kCertify, "Separation certificate for a finite point set"},
  }};
  for (const auto& [command, description] : descriptions) {
    auto sub = std::make_unique<Sub>();
    sub->command = command;
    sub->app = app.add_subcommand(std::string(CommandName(command)), description);
    sub->app->add_option("--config", sub->config_path, "Flat JSON config file");
    AddSharedFlags(sub->app, sub->flags);
    switch (command) {
      case Command::kSolve:
      case Command::kRates:
      case Command::kRatio:
        sub->flags.Add<std::string>(sub->app, "--problem", "problem",
                                    "cubic | sine | piecewise | recovery");
        sub->flags.Add<std::vector<double>>(sub->app, "--u1", "u1",
                                            "Starting point");
        sub->flags.Add<double>(sub->app, "--reference", "reference",
                               "Reference solution u*");
        sub->flags.Add<double>(sub->app, "--epsilon", "epsilon",
                               "Exponent offset in the growth ratio");
        sub->flags.Add<std::size_t>(sub->app, "--tail-window", "tail_window",
                                    "Samples used by the rate fit");
        sub->flags.Add<std::size_t>(sub->app, "--M", "M", "Measurements");
        sub->flags.Add<std::size_t>(sub->app, "--N", "N", "Signal length");
        sub->flags.Add<std::size_t>(sub->app, "--K", "K", "Nonzeros");
        break;
      case Command::kTable1:
      case Command::kTable2:
        sub->flags.Add<std::vector<double>>(sub->app, "--u1", "u1",
                                            "Starting points (repeatable)");
        break;
      case Command::kRecovery:
        sub->flags.Add<std::size_t>(sub->app, "--M", "M", "Measurements");
        sub->flags.Add<std::size_t>(sub->app, "--N", "N", "Signal length");
        sub->flags.Add<std::size_t>(sub->app, "--K", "K", "Nonzeros");
        sub->flags.Add<std::size_t>(sub->app, "--runs", "runs",
                                    "Number of seeds (seed, seed+1, ...)");
        break;
      case Command::kCertify:
        sub->app->add_option("--point", sub->points,
                             "Point as comma-separated coordinates (repeatable)");
        sub->flags.Add<std::string>(sub->app, "--preset", "preset",
                                    "Named point set: sine");
        sub->flags.Add<std::size_t>(sub->app, "--count", "count",
                                    "Points taken from the preset");
        sub->flags.Add<std::size_t>(sub->app, "--samples", "samples",
                                    "Samples per ordered pair");
        break;
    }
    subs.push_back(std::move(sub));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw InputError(std::string("command line: ") + e.what());
  }

  for (const auto& sub : subs) {
    if (!sub->app->parsed()) continue;
    RunConfig cfg = DefaultConfig(sub->command);
    bool seed_given = false;
    if (!sub->config_path.empty()) {
      json doc = ReadJsonFile(sub->config_path);
      if (doc.contains("command") &&
          GetString(doc["command"], "command") != CommandName(sub->command)) {
        BadKey("command", "config file is for '" +
                              doc["command"].get<std::string>() + "'");
      }
      seed_given = doc.contains("seed");
      cfg = ApplyJson(cfg, doc);
    }
    json flags = sub->flags.Collect();
    if (!sub->points.empty()) {
      json pts = json::array();
      for (const std::string& p : sub->points) pts.push_back(ParseCoordinates(p));
      flags["points"] = pts;
    }
    seed_given = seed_given || flags.contains("seed");
    if (!seed_given && seed_env && !seed_env->empty()) {
      cfg.seed = ParseSeedEnv(*seed_env);
    }
    cfg = ApplyJson(cfg, flags);
    Validate(cfg);
    return cfg;
  }
  throw InputError("command line: no command given");
}

}  // namespace qvi::cli
