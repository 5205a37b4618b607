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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "nnsieve/sieve.hpp"
#include "table.hpp"

namespace nnsieve::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
  fs::path dir = fs::temp_directory_path() / "nnsieve_cli_test" /
                 (std::string(info->test_suite_name()) + "." + info->name());
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream stream(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(stream), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream stream(text);
  for (std::string line; std::getline(stream, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream stream(line);
  for (std::string field; std::getline(stream, field, ',');) out.push_back(field);
  return out;
}

void write(const fs::path& path, const std::string& text) { std::ofstream(path) << text; }

TEST(ParseConfig, NormalityDefaultsWithOverrides) {
  const RunConfig config = parse_config({"normality", "--n", "300", "--seed", "7"});
  EXPECT_EQ(config.command, Command::kNormality);
  EXPECT_EQ(config.n_grid, std::vector<std::uint64_t>{300});
  EXPECT_EQ(config.seed, 7u);
  EXPECT_EQ(config.replicates, 200u);
  EXPECT_EQ(config.noise_sd, 1.0);
  EXPECT_EQ(config.schedule, SieveSchedule::normality());
  EXPECT_EQ(config.train.iterations, 20000u);
  EXPECT_EQ(config.truths.size(), 3u);
}

TEST(ParseConfig, InconsistencyDefaults) {
  const RunConfig config = parse_config({"--command", "inconsistency"});
  EXPECT_EQ(config.truths, std::vector<TruthKind>{TruthKind::kNeuralNet});
  EXPECT_EQ(config.n_grid, std::vector<std::uint64_t>{500});
  EXPECT_EQ(config.noise_sd, 0.1);
  EXPECT_EQ(config.train.iterations, 30000u);
  EXPECT_EQ(config.train.alpha_step_rule, AlphaStepRule::kConstant);
  EXPECT_EQ(config.train.gamma_learning_rate, 0.1);
  EXPECT_EQ(dims(config.schedule, 500).hidden_units, 2u);
  EXPECT_TRUE(std::isinf(dims(config.schedule, 500).alpha_bound));
}

TEST(ParseConfig, ConsistencyDefaults) {
  const RunConfig config = parse_config({"consistency"});
  EXPECT_EQ(config.n_grid, (std::vector<std::uint64_t>{50, 100, 200, 500, 1000, 2000}));
  EXPECT_EQ(config.noise_sd, 0.7);
  EXPECT_EQ(config.schedule, SieveSchedule::consistency());
  EXPECT_EQ(config.train.iterations, 20000u);
}

TEST(ParseConfig, MissingCommandIsUsageError) {
  EXPECT_THROW(parse_config({}), UsageError);
  EXPECT_THROW(parse_config({"--n", "10"}), UsageError);
}

TEST(ParseConfig, RejectsBadInput) {
  EXPECT_THROW(parse_config({"regress"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--bogus", "1"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--n", "ten"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--format", "xml"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--truth", "poly"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--n-grid", "100,50"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--noise-sd", "-1"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--workers", "0"}), UsageError);
  EXPECT_THROW(parse_config({"inconsistency", "--truth", "TRIG"}), UsageError);
  EXPECT_THROW(parse_config({"normality", "--replicates", "2"}), UsageError);
  EXPECT_THROW(parse_config({"consistency", "--command", "normality"}), UsageError);
}

TEST(ParseConfig, ConflictingGridIsUsageError) {
  EXPECT_THROW(parse_config({"consistency", "--n", "50", "--n-grid", "50,100"}), UsageError);
}

TEST(ParseConfig, FlagsOverrideFile) {
  const fs::path dir = scratch_dir();
  write(dir / "config.json", R"({"command": "normality", "replicates": 200, "seed": 3})");
  const RunConfig config =
      parse_config({"--config", (dir / "config.json").string(), "--replicates", "50"});
  EXPECT_EQ(config.command, Command::kNormality);
  EXPECT_EQ(config.replicates, 50u);
  EXPECT_EQ(config.seed, 3u);
}

TEST(ParseConfig, FlagGridReplacesFileGrid) {
  const fs::path dir = scratch_dir();
  write(dir / "config.json", R"({"n-grid": [50, 100]})");
  const RunConfig config =
      parse_config({"consistency", "--config", (dir / "config.json").string(), "--n", "70"});
  EXPECT_EQ(config.n_grid, std::vector<std::uint64_t>{70});
}

TEST(ParseConfig, MalformedFileIsUsageError) {
  const fs::path dir = scratch_dir();
  write(dir / "broken.json", "{\"seed\": ");
  write(dir / "unknown.json", R"({"learning_rate": 0.1})");
  write(dir / "nested.json", R"({"seed": {"value": 1}})");
  write(dir / "both.json", R"({"n": 50, "n-grid": "50,100"})");
  for (const char* name : {"broken.json", "unknown.json", "nested.json", "both.json"}) {
    EXPECT_THROW(parse_config({"consistency", "--config", (dir / name).string()}), UsageError)
        << name;
  }
  EXPECT_THROW(parse_config({"consistency", "--config", (dir / "absent.json").string()}),
               UsageError);
}

TEST(ParseConfig, ManifestRoundTrips) {
  const fs::path dir = scratch_dir();
  const RunConfig original =
      parse_config({"inconsistency", "--noise-sd", "0.3", "--seed", "18446744073709551615",
                    "--m-constant", "12.5", "--out", (dir / "o").string()});
  std::string text = "{";
  for (const auto& [key, value] : manifest_entries(original)) {
    if (text.size() > 1) text += ",";
    text += "\"" + key + "\":" + value;
  }
  write(dir / "manifest.json", text + "}");
  const RunConfig again = parse_config({"--config", (dir / "manifest.json").string()});
  EXPECT_EQ(again.command, original.command);
  EXPECT_EQ(again.truths, original.truths);
  EXPECT_EQ(again.n_grid, original.n_grid);
  EXPECT_EQ(again.noise_sd, original.noise_sd);
  EXPECT_EQ(again.schedule, original.schedule);
  EXPECT_EQ(again.train.iterations, original.train.iterations);
  EXPECT_EQ(again.train.alpha_step_rule, original.train.alpha_step_rule);
  EXPECT_EQ(again.train.alpha_step_scale, original.train.alpha_step_scale);
  EXPECT_EQ(again.seed, original.seed);
  EXPECT_EQ(again.out, original.out);
}

TEST(FormatDouble, LocaleIndependentSignificantDigits) {
  EXPECT_EQ(format_double(0.1, 6), "0.1");
  EXPECT_EQ(format_double(1234567.0, 6), "1.23457e+06");
  EXPECT_EQ(format_double(0.1, 17), "0.10000000000000001");
  EXPECT_EQ(format_double(-std::numeric_limits<double>::infinity(), 6), "-inf");
}

TEST(Tables, CsvAndJsonLayouts) {
  const Table table{{"a", "b", "c"}, {{std::string("x"), 0.5, std::uint64_t{3}}, {{}, 1e-7, std::uint64_t{0}}}};
  EXPECT_EQ(to_csv(table), "a,b,c\nx,0.5,3\n,1e-07,0\n");
  EXPECT_EQ(to_json(table),
            "[\n  {\"a\": \"x\", \"b\": 0.5, \"c\": 3},\n  {\"a\": null, \"b\": "
            "9.9999999999999995e-08, \"c\": 0}\n]\n");
}

TEST(Execute, ConsistencyShape) {
  const fs::path dir = scratch_dir();
  const RunConfig config =
      parse_config({"consistency", "--iterations", "20", "--out", dir.string()});
  execute(config);
  const auto rows = lines(slurp(dir / "results.csv"));
  ASSERT_EQ(rows.size(), 19u);
  EXPECT_EQ(rows[0], "n,truth,err,loss");
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(fields(rows[i]).size(), 4u);
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST(Execute, NormalityShape) {
  const fs::path dir = scratch_dir();
  const RunConfig config = parse_config(
      {"normality", "--iterations", "10", "--replicates", "5", "--out", dir.string()});
  execute(config);
  const auto rows = lines(slurp(dir / "results.csv"));
  ASSERT_EQ(rows.size(), 37u);
  EXPECT_EQ(rows[0], "n,truth,test,statistic,p_value,statistic_plugin,p_value_plugin");
  const auto qq = lines(slurp(dir / "qq_TRIG_n300.csv"));
  ASSERT_EQ(qq.size(), 6u);
  EXPECT_EQ(qq[0], "theoretical,empirical");
  EXPECT_EQ(lines(slurp(dir / "replicates.csv")).size(), 1u + 18u * 5u);
}

TEST(Execute, InconsistencyParameterTable) {
  const fs::path dir = scratch_dir();
  const RunConfig config = parse_config(
      {"inconsistency", "--iterations", "30", "--replicates", "2", "--out", dir.string()});
  execute(config);
  const auto rows = lines(slurp(dir / "results.csv"));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0],
            "row,replicate,seed,gamma_1,gamma_2,alpha_1,alpha_2,gamma0_1,gamma0_2,alpha_0,err,"
            "loss,parameter_distance");
  EXPECT_EQ(rows[1], "true,,,2,-1,1,-1,1,1,-1,,,");
}

TEST(Execute, RerunIsByteIdentical) {
  const fs::path dir = scratch_dir();
  for (const char* sub : {"a", "b"}) {
    execute(parse_config({"normality", "--n-grid", "50,100", "--iterations", "40",
                          "--replicates", "4", "--workers", sub[0] == 'a' ? "1" : "3", "--out",
                          (dir / sub).string()}));
  }
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    if (entry.path().extension() != ".csv") continue;
    EXPECT_EQ(slurp(entry.path()), slurp(dir / "b" / entry.path().filename()))
        << entry.path().filename();
    ++compared;
  }
  EXPECT_EQ(compared, 3u + 6u);
}

TEST(Execute, ManifestReproducesOutputs) {
  const fs::path dir = scratch_dir();
  execute(parse_config({"consistency", "--n-grid", "30,60", "--iterations", "25", "--seed", "11",
                        "--out", (dir / "first").string()}));
  execute(parse_config({"--config", (dir / "first" / "manifest.json").string(), "--out",
                        (dir / "second").string()}));
  EXPECT_EQ(slurp(dir / "first" / "results.csv"), slurp(dir / "second" / "results.csv"));
  EXPECT_EQ(slurp(dir / "first" / "replicates.csv"), slurp(dir / "second" / "replicates.csv"));
}

TEST(Execute, DiagnosticsColumnsMatchLibrary) {
  const fs::path dir = scratch_dir();
  const RunConfig config = parse_config(
      {"diagnostics", "--n-grid", "100,1000,10000,100000,1000000,10000000", "--out",
       dir.string()});
  execute(config);
  const auto rows = lines(slurp(dir / "diagnostics.csv"));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], "n,r_n,V_n,p_n,consistency_ratio,normality_ratio,predicted_rate");
  const auto expected = check_consistency_rate(config.schedule, config.n_grid);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double ratio = std::stod(fields(rows[i])[4]);
    EXPECT_NEAR(ratio, expected[i - 1], 1e-5 * expected[i - 1]);
    EXPECT_LT(ratio, previous);
    previous = ratio;
  }
}

TEST(Execute, DiagnosticsSurfaceFastGrowth) {
  const fs::path dir = scratch_dir();
  execute(parse_config({"diagnostics", "--n-grid", "100,1000,10000,100000", "--r-exponent",
                        "0.5", "--v-exponent", "0.5", "--out", dir.string()}));
  const auto rows = lines(slurp(dir / "diagnostics.csv"));
  for (std::size_t i = 2; i < rows.size(); ++i) {
    EXPECT_GE(std::stod(fields(rows[i])[4]), std::stod(fields(rows[i - 1])[4]));
  }
}

TEST(RunMain, ExitCodes) {
  const fs::path dir = scratch_dir();
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(run_main({}, out, err), kUsage);
  EXPECT_NE(err.str().find("missing command"), std::string::npos);
  EXPECT_EQ(run_main({"--help"}, out, err), kOk);

  write(dir / "occupied", "x");
  EXPECT_EQ(run_main({"diagnostics", "--out", (dir / "occupied").string()}, out, err), kIo);
  EXPECT_EQ(run_main({"diagnostics", "--out", (dir / "ok").string()}, out, err), kOk);
}

}  // namespace
}  // namespace nnsieve::cli
