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

#ifndef NNSIEVE_TOOLS_CLI_HPP_
#define NNSIEVE_TOOLS_CLI_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nnsieve/sieve.hpp"
#include "nnsieve/simlab.hpp"
#include "nnsieve/trainer.hpp"

namespace nnsieve::cli {

enum class Command { kInconsistency, kConsistency, kNormality, kDiagnostics };
enum class OutputFormat { kCsv, kJson };

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kInvariant = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by parse_config for --help; carries the rendered help text.
class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Command command = Command::kConsistency;
  std::vector<TruthKind> truths;
  std::vector<std::uint64_t> n_grid;
  double noise_sd = 0.0;
  SieveSchedule schedule;
  TrainConfig train;
  std::size_t replicates = 1;
  std::uint64_t seed = 0;
  std::filesystem::path out = "results";
  OutputFormat format = OutputFormat::kCsv;
  std::size_t workers = 1;
};

std::string_view command_name(Command command) noexcept;

/// Built-in settings for a command before any file or flag is applied.
RunConfig defaults_for(Command command);

/// Arguments exclude the program name. Settings resolve as command defaults,
/// then the flat JSON file named by --config, then flags.
RunConfig parse_config(const std::vector<std::string>& args);

/// Flat key/value pairs (JSON literal text) that parse back to `config`.
std::vector<std::pair<std::string, std::string>> manifest_entries(const RunConfig& config);

/// Runs the command and writes its files under config.out. Returns the paths
/// written, in order.
std::vector<std::filesystem::path> execute(const RunConfig& config);

/// Parse, execute, and map failures onto ExitCode.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nnsieve::cli

#endif  // NNSIEVE_TOOLS_CLI_HPP_
