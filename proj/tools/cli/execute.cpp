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

#include <filesystem>
#include <ostream>
#include <string>

#include "cli.hpp"
#include "nnsieve/errors.hpp"
#include "table.hpp"

#ifndef NNSIEVE_VERSION
#define NNSIEVE_VERSION "unknown"
#endif

namespace nnsieve::cli {
namespace {

namespace fs = std::filesystem;

Scenario make_scenario(const RunConfig& config, TruthKind truth, std::uint64_t n) {
  return Scenario{.truth = truth,
                  .noise_sd = config.noise_sd,
                  .n = static_cast<std::size_t>(n),
                  .schedule = config.schedule,
                  .train = config.train,
                  .replicates = config.replicates,
                  .master_seed = config.seed};
}

std::string truth_text(TruthKind truth) { return std::string(truth_name(truth)); }

class Writer {
 public:
  explicit Writer(const RunConfig& config) : config_(config) {
    std::error_code ec;
    fs::create_directories(config.out, ec);
    if (ec) throw IoError("cannot create " + config.out.string() + ": " + ec.message());
  }

  void table(const std::string& stem, const Table& table) {
    if (config_.format == OutputFormat::kJson) {
      raw(stem + ".json", to_json(table));
    } else {
      raw(stem + ".csv", to_csv(table));
    }
  }

  void raw(const std::string& name, const std::string& contents) {
    const fs::path path = config_.out / name;
    write_file(path, contents);
    written_.push_back(path);
  }

  std::vector<fs::path> finish() { return std::move(written_); }

 private:
  const RunConfig& config_;
  std::vector<fs::path> written_;
};

Table replicate_table(const std::vector<ReplicateRecord>& records) {
  Table table{{"n", "truth", "replicate", "seed", "hidden_units", "alpha_bound", "err", "loss",
               "t_known", "t_plugin"},
              {}};
  for (const ReplicateRecord& r : records) {
    table.rows.push_back({std::uint64_t{r.n}, truth_text(r.truth), std::uint64_t{r.replicate},
                          r.seed, std::uint64_t{r.hidden_units}, r.alpha_bound, r.err, r.loss,
                          r.t_known, r.t_plugin});
  }
  return table;
}

// Parameters in the column order gamma_j, alpha_j, gamma0_j, alpha_0.
std::vector<Cell> parameter_cells(const Theta& theta) {
  std::vector<Cell> cells;
  for (std::size_t j = 0; j < theta.hidden_units(); ++j) cells.emplace_back(theta.gamma(j)[0]);
  for (double a : theta.alpha()) cells.emplace_back(a);
  for (double g : theta.gamma0()) cells.emplace_back(g);
  cells.emplace_back(theta.alpha0());
  return cells;
}

void run_inconsistency_command(const RunConfig& config, Writer& writer) {
  const ExperimentReport report = run_inconsistency(
      make_scenario(config, TruthKind::kNeuralNet, config.n_grid.front()), config.workers);
  const Theta& truth = *report.reference_theta;
  const std::size_t r = truth.hidden_units();

  Table table;
  table.columns = {"row", "replicate", "seed"};
  for (const char* prefix : {"gamma_", "alpha_", "gamma0_"}) {
    for (std::size_t j = 1; j <= r; ++j) table.columns.push_back(prefix + std::to_string(j));
  }
  table.columns.insert(table.columns.end(),
                       {"alpha_0", "err", "loss", "parameter_distance"});

  std::vector<Cell> row = {std::string("true"), {}, {}};
  for (Cell& c : parameter_cells(truth)) row.push_back(std::move(c));
  row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
  table.rows.push_back(std::move(row));

  for (const ReplicateRecord& record : report.records) {
    row = {std::string("estimated"), std::uint64_t{record.replicate}, record.seed};
    for (Cell& c : parameter_cells(record.theta_hat)) row.push_back(std::move(c));
    row.insert(row.end(), {record.err, record.loss, *record.parameter_distance});
    table.rows.push_back(std::move(row));
  }
  writer.table("results", table);
}

void run_consistency_command(const RunConfig& config, Writer& writer) {
  std::vector<Scenario> scenarios;
  for (std::uint64_t n : config.n_grid) {
    for (TruthKind truth : config.truths) scenarios.push_back(make_scenario(config, truth, n));
  }
  const ExperimentReport report = run_consistency(scenarios, config.workers);

  Table table{{"n", "truth", "err", "loss"}, {}};
  std::size_t offset = 0;
  for (const Scenario& scenario : scenarios) {
    double err = 0.0;
    double loss = 0.0;
    for (std::size_t i = 0; i < scenario.replicates; ++i) {
      err += report.records[offset + i].err;
      loss += report.records[offset + i].loss;
    }
    offset += scenario.replicates;
    const double count = static_cast<double>(scenario.replicates);
    table.rows.push_back({std::uint64_t{scenario.n}, truth_text(scenario.truth), err / count,
                          loss / count});
  }
  writer.table("results", table);
  writer.table("replicates", replicate_table(report.records));
}

void run_normality_command(const RunConfig& config, Writer& writer) {
  std::vector<Scenario> scenarios;
  for (TruthKind truth : config.truths) {
    for (std::uint64_t n : config.n_grid) scenarios.push_back(make_scenario(config, truth, n));
  }
  const ExperimentReport report = run_normality(scenarios, config.workers);

  Table results{{"n", "truth", "test", "statistic", "p_value", "statistic_plugin",
                 "p_value_plugin"},
                {}};
  Table moments{{"n", "truth", "replicates", "mean", "sd"}, {}};
  for (const NormalityCell& cell : report.cells) {
    const std::uint64_t n = cell.n;
    results.rows.push_back({n, truth_text(cell.truth), cell.ks.test_name,
                            cell.ks.statistic_value, cell.ks.p_value,
                            cell.ks_plugin.statistic_value, cell.ks_plugin.p_value});
    results.rows.push_back({n, truth_text(cell.truth), cell.shapiro.test_name,
                            cell.shapiro.statistic_value, cell.shapiro.p_value,
                            cell.shapiro_plugin.statistic_value, cell.shapiro_plugin.p_value});
    moments.rows.push_back({n, truth_text(cell.truth), std::uint64_t{cell.t_known.size()},
                            cell.mean, cell.sd});
  }
  writer.table("results", results);
  writer.table("moments", moments);
  writer.table("replicates", replicate_table(report.records));

  for (const NormalityCell& cell : report.cells) {
    Table qq{{"theoretical", "empirical"}, {}};
    for (const QQPoint& p : cell.qq) qq.rows.push_back({p.theoretical, p.empirical});
    writer.raw("qq_" + truth_text(cell.truth) + "_n" + std::to_string(cell.n) + ".csv",
               to_csv(qq));
  }
}

void run_diagnostics_command(const RunConfig& config, Writer& writer) {
  const std::vector<double> consistency = check_consistency_rate(config.schedule, config.n_grid);
  const std::vector<double> normality = check_normality_rate(config.schedule, config.n_grid);
  Table table{{"n", "r_n", "V_n", "p_n", "consistency_ratio", "normality_ratio",
               "predicted_rate"},
              {}};
  for (std::size_t i = 0; i < config.n_grid.size(); ++i) {
    const std::uint64_t n = config.n_grid[i];
    const SieveDims d = dims(config.schedule, n);
    table.rows.push_back({n, std::uint64_t{d.hidden_units}, d.alpha_bound,
                          std::uint64_t{d.parameter_count}, consistency[i], normality[i],
                          predicted_rate(config.schedule, n)});
  }
  writer.table("diagnostics", table);
}

std::string manifest_text(const RunConfig& config) {
  std::string text = "{\n";
  for (const auto& [key, value] : manifest_entries(config)) {
    text += "  \"" + key + "\": " + value + ",\n";
  }
  text += "  \"version\": \"" NNSIEVE_VERSION "\"\n}\n";
  return text;
}

}  // namespace

std::vector<fs::path> execute(const RunConfig& config) {
  Writer writer(config);
  switch (config.command) {
    case Command::kInconsistency:
      run_inconsistency_command(config, writer);
      break;
    case Command::kConsistency:
      run_consistency_command(config, writer);
      break;
    case Command::kNormality:
      run_normality_command(config, writer);
      break;
    case Command::kDiagnostics:
      run_diagnostics_command(config, writer);
      break;
  }
  writer.raw("manifest.json", manifest_text(config));
  return writer.finish();
}

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_config(args);
  } catch (const HelpRequested& help) {
    out << help.what();
    return kOk;
  } catch (const UsageError& e) {
    err << "nnsieve: " << e.what() << "\nRun with --help for more information.\n";
    return kUsage;
  }

  try {
    for (const fs::path& path : execute(config)) out << path.string() << '\n';
    return kOk;
  } catch (const IoError& e) {
    err << "nnsieve: " << e.what() << '\n';
    return kIo;
  } catch (const fs::filesystem_error& e) {
    err << "nnsieve: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidInput& e) {
    err << "nnsieve: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "nnsieve: internal error: " << e.what() << '\n';
    return kInvariant;
  }
}

}  // namespace nnsieve::cli
