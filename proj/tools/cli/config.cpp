// Copyright 2026 The nnsieve Authors.
//
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

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string_view>
#include <system_error>

#include "CLI11.hpp"
#include "cli.hpp"
#include "json.hpp"
#include "nnsieve/errors.hpp"
#include "table.hpp"

namespace nnsieve::cli {
namespace {

using Settings = std::map<std::string, std::string, std::less<>>;

constexpr std::array<std::string_view, 20> kSettingKeys = {
    "truth",      "n",          "n-grid",     "noise-sd",   "r-scale",
    "r-exponent", "v-scale",    "v-exponent", "m-constant", "iterations",
    "step-rule",  "step-scale", "learning-rate", "init-scale", "eta",
    "replicates", "seed",       "out",        "format",     "workers",
};

constexpr std::array<std::pair<Command, std::string_view>, 4> kCommands = {{
    {Command::kInconsistency, "inconsistency"},
    {Command::kConsistency, "consistency"},
    {Command::kNormality, "normality"},
    {Command::kDiagnostics, "diagnostics"},
}};

Command parse_command(std::string_view text) {
  for (const auto& [command, name] : kCommands) {
    if (name == text) return command;
  }
  throw UsageError("unknown command '" + std::string(text) + "'");
}

std::vector<std::string> split(std::string_view text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    std::string_view part = text.substr(start, comma - start);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    parts.emplace_back(part);
    start = comma + 1;
  }
  return parts;
}

std::uint64_t to_unsigned(std::string_view key, std::string_view text) {
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError("--" + std::string(key) + ": expected a nonnegative integer, got '" +
                     std::string(text) + "'");
  }
  return value;
}

double to_real(std::string_view key, std::string_view text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() ||
      std::isnan(value)) {
    throw UsageError("--" + std::string(key) + ": expected a number, got '" +
                     std::string(text) + "'");
  }
  return value;
}

std::vector<std::uint64_t> to_grid(std::string_view key, std::string_view text) {
  std::vector<std::uint64_t> grid;
  for (const std::string& part : split(text)) grid.push_back(to_unsigned(key, part));
  return grid;
}

std::vector<TruthKind> to_truths(std::string_view text) {
  if (text == "all" || text == "ALL") return {kAllTruths.begin(), kAllTruths.end()};
  std::vector<TruthKind> truths;
  for (const std::string& part : split(text)) {
    try {
      truths.push_back(parse_truth(part));
    } catch (const InvalidInput&) {
      throw UsageError("--truth: expected NN, TRIG, ND or all, got '" + part + "'");
    }
  }
  return truths;
}

// Scalar JSON values become the text a flag would carry; arrays join with
// commas so a grid can be written either way.
std::string json_value_text(const std::string& key, const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number()) return value.dump();
  if (value.is_array()) {
    std::string joined;
    for (const auto& item : value) {
      if (!item.is_number() && !item.is_string()) {
        throw UsageError("config key '" + key + "': array items must be scalars");
      }
      if (!joined.empty()) joined += ',';
      joined += json_value_text(key, item);
    }
    return joined;
  }
  throw UsageError("config key '" + key + "': unsupported value " + value.dump());
}

// Reads the flat config file into `settings`, returning the command if named.
std::optional<std::string> read_config_file(const std::string& path, Settings& settings) {
  std::ifstream stream(path);
  if (!stream) throw UsageError("cannot read config file " + path);
  nlohmann::json document;
  try {
    document = nlohmann::json::parse(stream);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("malformed config file " + path + ": " + e.what());
  }
  if (!document.is_object()) throw UsageError("config file " + path + " is not a JSON object");

  std::optional<std::string> command;
  for (const auto& [key, value] : document.items()) {
    if (key == "version") continue;
    if (key == "command") {
      if (!value.is_string()) throw UsageError("config key 'command' must be a string");
      command = value.get<std::string>();
      continue;
    }
    if (std::find(kSettingKeys.begin(), kSettingKeys.end(), key) == kSettingKeys.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
    settings[key] = json_value_text(key, value);
  }
  if (settings.contains("n") && settings.contains("n-grid")) {
    throw UsageError("config file sets both n and n-grid");
  }
  return command;
}

void apply_settings(const Settings& settings, RunConfig& config) {
  for (const auto& [key, text] : settings) {
    if (key == "truth") {
      config.truths = to_truths(text);
    } else if (key == "n") {
      config.n_grid = {to_unsigned(key, text)};
    } else if (key == "n-grid") {
      config.n_grid = to_grid(key, text);
    } else if (key == "noise-sd") {
      config.noise_sd = to_real(key, text);
    } else if (key == "r-scale") {
      config.schedule.r_scale = to_real(key, text);
    } else if (key == "r-exponent") {
      config.schedule.r_exponent = to_real(key, text);
    } else if (key == "v-scale") {
      config.schedule.v_scale = to_real(key, text);
    } else if (key == "v-exponent") {
      config.schedule.v_exponent = to_real(key, text);
    } else if (key == "m-constant") {
      config.schedule.m_constant = to_real(key, text);
    } else if (key == "iterations") {
      config.train.iterations = to_unsigned(key, text);
    } else if (key == "step-rule") {
      if (text == "diminishing") {
        config.train.alpha_step_rule = AlphaStepRule::kDiminishing;
      } else if (text == "constant") {
        config.train.alpha_step_rule = AlphaStepRule::kConstant;
      } else {
        throw UsageError("--step-rule: expected diminishing or constant, got '" + text + "'");
      }
    } else if (key == "step-scale") {
      config.train.alpha_step_scale = to_real(key, text);
    } else if (key == "learning-rate") {
      config.train.gamma_learning_rate = to_real(key, text);
    } else if (key == "init-scale") {
      config.train.init_scale = to_real(key, text);
    } else if (key == "eta") {
      config.train.eta_n = to_real(key, text);
    } else if (key == "replicates") {
      config.replicates = to_unsigned(key, text);
    } else if (key == "seed") {
      config.seed = to_unsigned(key, text);
    } else if (key == "out") {
      if (text.empty()) throw UsageError("--out: empty path");
      config.out = text;
    } else if (key == "format") {
      if (text == "csv") {
        config.format = OutputFormat::kCsv;
      } else if (text == "json") {
        config.format = OutputFormat::kJson;
      } else {
        throw UsageError("--format: expected csv or json, got '" + text + "'");
      }
    } else if (key == "workers") {
      config.workers = to_unsigned(key, text);
    }
  }
}

void validate(const RunConfig& config) {
  if (config.n_grid.empty()) throw UsageError("empty n grid");
  if (!std::is_sorted(config.n_grid.begin(), config.n_grid.end(), std::less_equal<>{})) {
    throw UsageError("n grid must be strictly increasing");
  }
  if (config.truths.empty()) throw UsageError("no truth selected");
  if (config.workers == 0) throw UsageError("--workers must be at least 1");

  try {
    if (config.command == Command::kDiagnostics) {
      if (config.n_grid.front() < 2) throw UsageError("diagnostics needs n >= 2");
      config.schedule.validate();
      return;
    }
    if (config.command == Command::kInconsistency) {
      if (config.truths.size() != 1 || config.truths.front() != TruthKind::kNeuralNet) {
        throw UsageError("inconsistency runs only against the NN truth");
      }
      if (config.n_grid.size() != 1) throw UsageError("inconsistency takes a single n");
      if (dims(config.schedule, config.n_grid.front()).hidden_units != 2) {
        throw UsageError("inconsistency needs a schedule with exactly 2 hidden units");
      }
    }
    if (config.command == Command::kNormality && config.replicates < 3) {
      throw UsageError("normality needs at least 3 replicates");
    }
    for (std::uint64_t n : config.n_grid) {
      Scenario scenario{.truth = config.truths.front(),
                        .noise_sd = config.noise_sd,
                        .n = static_cast<std::size_t>(n),
                        .schedule = config.schedule,
                        .train = config.train,
                        .replicates = config.replicates,
                        .master_seed = config.seed};
      scenario.validate();
    }
  } catch (const InvalidInput& e) {
    throw UsageError(e.what());
  }
}

std::string json_string(std::string_view text) { return nlohmann::json(text).dump(); }

std::string json_real(double value) {
  return std::isfinite(value) ? format_double(value, 17) : json_string(format_double(value, 17));
}

}  // namespace

std::string_view command_name(Command command) noexcept {
  for (const auto& [c, name] : kCommands) {
    if (c == command) return name;
  }
  return {};
}

RunConfig defaults_for(Command command) {
  RunConfig config;
  config.command = command;
  config.truths.assign(kAllTruths.begin(), kAllTruths.end());
  switch (command) {
    case Command::kInconsistency:
      config.truths = {TruthKind::kNeuralNet};
      config.n_grid = {500};
      config.noise_sd = 0.1;
      config.schedule = SieveSchedule::fixed(2);
      config.train.iterations = 30000;
      config.train.alpha_step_rule = AlphaStepRule::kConstant;
      config.replicates = 10;
      break;
    case Command::kConsistency:
      config.n_grid = {50, 100, 200, 500, 1000, 2000};
      config.noise_sd = 0.7;
      config.schedule = SieveSchedule::consistency();
      config.train.iterations = 20000;
      config.replicates = 1;
      break;
    case Command::kNormality:
      config.n_grid = {50, 100, 200, 300, 400, 500};
      config.noise_sd = 1.0;
      config.schedule = SieveSchedule::normality();
      config.train.iterations = 20000;
      config.replicates = 200;
      break;
    case Command::kDiagnostics:
      config.n_grid.clear();
      for (std::uint64_t n = 100; n <= 1'000'000'000; n *= 10) config.n_grid.push_back(n);
      config.schedule = SieveSchedule::consistency();
      break;
  }
  return config;
}

RunConfig parse_config(const std::vector<std::string>& args) {
  CLI::App app{"Neural-network sieve estimation experiments", "nnsieve"};
  app.set_help_flag("-h,--help", "Print this help and exit");

  std::string positional_command;
  std::string flag_command;
  std::string config_path;
  app.add_option("COMMAND", positional_command,
                 "inconsistency | consistency | normality | diagnostics");
  app.add_option("--command", flag_command, "Same as the positional command");
  app.add_option("--config", config_path, "Flat JSON file of settings; flags take precedence");

  Settings flags;
  std::map<std::string, std::string> raw;
  const std::map<std::string_view, std::string_view> help = {
      {"truth", "NN, TRIG, ND, a comma list, or all"},
      {"n", "Single sample size"},
      {"n-grid", "Comma-separated, strictly increasing sample sizes"},
      {"noise-sd", "Standard deviation of the Gaussian noise"},
      {"r-scale", "r_n = floor(r-scale * n^r-exponent)"},
      {"r-exponent", "Growth exponent of the hidden-unit count"},
      {"v-scale", "V_n = v-scale * n^v-exponent (inf for no bound)"},
      {"v-exponent", "Growth exponent of the output-weight bound"},
      {"m-constant", "Bound on hidden-unit l1 norms"},
      {"iterations", "Training iterations per fit"},
      {"step-rule", "Output-weight step: diminishing or constant"},
      {"step-scale", "Output-weight step scale"},
      {"learning-rate", "Hidden-weight learning rate"},
      {"init-scale", "Initial weights ~ U[-s, s]"},
      {"eta", "Early-stop tolerance on the loss change (0 = full budget)"},
      {"replicates", "Replicates per (truth, n)"},
      {"seed", "Master seed"},
      {"out", "Output directory"},
      {"format", "Table format: csv or json"},
      {"workers", "Worker threads"},
  };
  for (std::string_view key : kSettingKeys) {
    app.add_option("--" + std::string(key), raw[std::string(key)],
                   std::string(help.at(key)));
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (std::string_view key : kSettingKeys) {
    if (app.count("--" + std::string(key)) > 0) flags[std::string(key)] = raw[std::string(key)];
  }
  if (flags.contains("n") && flags.contains("n-grid")) {
    throw UsageError("--n and --n-grid are mutually exclusive");
  }

  Settings settings;
  std::optional<std::string> command_text;
  if (!config_path.empty()) command_text = read_config_file(config_path, settings);
  if (!positional_command.empty() && !flag_command.empty() &&
      positional_command != flag_command) {
    throw UsageError("conflicting commands '" + positional_command + "' and '" + flag_command +
                     "'");
  }
  if (!positional_command.empty()) command_text = positional_command;
  if (!flag_command.empty()) command_text = flag_command;
  if (!command_text) throw UsageError("missing command");

  if (flags.contains("n") || flags.contains("n-grid")) {
    settings.erase("n");
    settings.erase("n-grid");
  }
  for (auto& [key, text] : flags) settings[key] = text;

  RunConfig config = defaults_for(parse_command(*command_text));
  apply_settings(settings, config);
  validate(config);
  return config;
}

std::vector<std::pair<std::string, std::string>> manifest_entries(const RunConfig& config) {
  std::string truths;
  for (TruthKind truth : config.truths) {
    if (!truths.empty()) truths += ',';
    truths += truth_name(truth);
  }
  std::string grid;
  for (std::uint64_t n : config.n_grid) {
    if (!grid.empty()) grid += ',';
    grid += std::to_string(n);
  }
  const SieveSchedule& s = config.schedule;
  const TrainConfig& t = config.train;
  std::vector<std::pair<std::string, std::string>> entries = {
      {"command", json_string(command_name(config.command))},
      {"truth", json_string(truths)},
      {"n-grid", json_string(grid)},
      {"noise-sd", json_real(config.noise_sd)},
      {"r-scale", json_real(s.r_scale)},
      {"r-exponent", json_real(s.r_exponent)},
      {"v-scale", json_real(s.v_scale)},
      {"v-exponent", json_real(s.v_exponent)},
  };
  if (s.m_constant) entries.emplace_back("m-constant", json_real(*s.m_constant));
  entries.insert(
      entries.end(),
      {
          {"iterations", std::to_string(t.iterations)},
          {"step-rule", json_string(t.alpha_step_rule == AlphaStepRule::kConstant ? "constant"
                                                                                   : "diminishing")},
          {"step-scale", json_real(t.alpha_step_scale)},
          {"learning-rate", json_real(t.gamma_learning_rate)},
          {"init-scale", json_real(t.init_scale)},
          {"eta", json_real(t.eta_n)},
          {"replicates", std::to_string(config.replicates)},
          {"seed", std::to_string(config.seed)},
          {"out", json_string(config.out.string())},
          {"format", json_string(config.format == OutputFormat::kJson ? "json" : "csv")},
          {"workers", std::to_string(config.workers)},
      });
  return entries;
}

}  // namespace nnsieve::cli
