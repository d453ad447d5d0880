// Copyright 2026 the bitround authors
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"

#include "bitround/harness.hpp"
#include "bitround/opb.hpp"
#include "test_helpers.hpp"

using namespace bitround;

namespace {

KnapsackRecipe small_recipe(uint64_t seed, int64_t sigma = 1 << 12) {
  KnapsackRecipe r;
  r.n = 10;
  r.k = 2;
  r.noise_sigma = sigma;
  r.seed = seed;
  return r;
}

ExperimentConfig minimal_config() {
  ExperimentConfig cfg;
  cfg.instance_sources.push_back({"one", small_recipe(7)});
  cfg.levels = {std::nullopt};
  cfg.seeds = 1;
  return cfg;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("shifted geometric mean on reference points") {
  std::vector<double> ones{1, 1, 1};
  CHECK(shifted_geometric_mean(ones, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> zero_three{0, 3};  // sqrt(1 * 4) - 1
  CHECK(shifted_geometric_mean(zero_three, 1.0) == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<double> single{42.5};
  CHECK(shifted_geometric_mean(single, 0.0) == 42.5);   // clamp makes this exact
  CHECK(shifted_geometric_mean(single, 17.0) == 42.5);
}

TEST_CASE("shifted geometric mean rejects bad input") {
  std::vector<double> empty;
  CHECK_THROWS_AS(shifted_geometric_mean(empty, 1.0), DomainError);
  std::vector<double> with_zero{0.0, 2.0};
  CHECK_THROWS_AS(shifted_geometric_mean(with_zero, 0.0), DomainError);
  std::vector<double> negative{1.0, -0.5};
  CHECK_THROWS_AS(shifted_geometric_mean(negative, 1.0), DomainError);
  std::vector<double> fine{1.0};
  CHECK_THROWS_AS(shifted_geometric_mean(fine, -1.0), DomainError);
}

TEST_CASE("shifted geometric mean tracks a high-precision reference") {
  Rng rng(20260814);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = static_cast<int>(uniform_int(rng, 1, 12));
    std::vector<double> values(n);
    double lo = 1e300, hi = -1e300;
    for (double& v : values) {
      v = uniform_unit(rng) * 1000.0;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    double shift = uniform_unit(rng) * 10.0 + 1e-6;
    double got = shifted_geometric_mean(values, shift);
    double want = testutil::sgm_reference(values, shift);
    want = std::clamp(want, lo, hi);
    CHECK(std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want)));
    CHECK(got >= lo);
    CHECK(got <= hi);
  }
}

TEST_CASE("level labels") {
  CHECK(level_label(std::nullopt) == "original");
  CHECK(level_label(2) == "2");
  CHECK(level_label(63) == "63");
}

TEST_CASE("loss percent formatting") {
  CHECK(format_loss_percent(0.0) == "+0.00");
  CHECK(format_loss_percent(0.341) == "3.41e-1");
  CHECK(format_loss_percent(0.00341) == "3.41e-3");
  CHECK(format_loss_percent(1.0) == "1.00");
  CHECK(format_loss_percent(3.41) == "3.41");
  CHECK(format_loss_percent(12.3456) == "12.35");
  CHECK(format_loss_percent(0.9999) == "1.00");  // %.2e rounds the mantissa up
}

TEST_CASE("records csv renders one pinned line per record") {
  ExperimentRecord rec;
  rec.instance = "ins,1";  // comma must not break the column count
  rec.seed = 2;
  rec.level = 3;
  rec.generator_count = 4;
  rec.status = SolveStatus::Optimal;
  rec.nodes = 123456;
  rec.time_s = 0.123456;
  rec.loss_state = LossState::Available;
  rec.loss = Rational(1, 200);
  rec.bound_checked = true;

  ExperimentRecord err;
  err.instance = "bad";
  err.error = "cannot open 'x'";

  std::string csv = records_csv({rec, err});
  CHECK(csv ==
        "instance,seed,level,status,generators,sym_timed_out,nodes,time_s,"
        "loss_percent,loss_state,bound,note\n"
        "ins;1,2,3,optimal,4,0,123456,0.123456,5.00e-1,available,ok,\n"
        "bad,0,-,error,0,0,0,0.000000,,unavailable,na,cannot open 'x'\n");

  CHECK(records_csv({}) ==
        "instance,seed,level,status,generators,sym_timed_out,nodes,time_s,"
        "loss_percent,loss_state,bound,note\n");
}

TEST_CASE("report emission in both formats") {
  AggregateRow original;
  original.level = std::nullopt;
  original.sgm_generators = 2.0;
  original.sgm_time_s = 0.25;
  original.solved = 5;

  AggregateRow rounded;
  rounded.level = 2;
  rounded.sgm_generators = 3.5;
  rounded.sgm_loss_percent = 0.0;
  rounded.sgm_time_s = 0.125;
  rounded.solved = 5;
  rounded.loss_n = 5;

  std::string csv = emit_report({original, rounded}, {}, ReportFormat::Csv);
  CHECK(csv ==
        "level,sgm_generators,sgm_loss_percent,sgm_time_s,solved,loss_n\n"
        "original,2.000000,,0.250000,5,0\n"
        "2,3.500000,+0.00,0.125000,5,5\n");

  CHECK(emit_report({}, {}, ReportFormat::Csv) ==
        "level,sgm_generators,sgm_loss_percent,sgm_time_s,solved,loss_n\n");

  std::string md = emit_report({original, rounded}, {}, ReportFormat::Markdown);
  CHECK(md.find("## Aggregates") != std::string::npos);
  CHECK(md.find("not comparable") != std::string::npos);
  CHECK(md.find("| original | 2.00 | n/a | 0.25 | 5 | 0 |") != std::string::npos);
  CHECK(md.find("| 2 | 3.50 | +0.00 | 0.12 | 5 | 5 |") != std::string::npos);
  CHECK(md.find("## Loss-bound violations") == std::string::npos);
  CHECK(md.find("## Errors") == std::string::npos);

  ExperimentRecord violated;
  violated.instance = "v";
  violated.seed = 1;
  violated.level = 2;
  violated.loss = Rational(9, 10);
  violated.bound_checked = true;
  violated.bound_violated = true;
  ExperimentRecord broken;
  broken.instance = "b";
  broken.error = "boom";
  std::string md2 = emit_report({}, {violated, broken}, ReportFormat::Markdown);
  CHECK(md2.find("## Loss-bound violations") != std::string::npos);
  CHECK(md2.find("- v seed 1 level 2: loss 9/10 exceeds the guarantee") != std::string::npos);
  CHECK(md2.find("## Errors") != std::string::npos);
  CHECK(md2.find("- b seed 0: boom") != std::string::npos);
}

TEST_CASE("minimal experiment yields one record and one aggregate row") {
  ExperimentResult result = run_experiment(minimal_config());
  REQUIRE(result.records.size() == 1);
  REQUIRE(result.aggregates.size() == 1);

  const ExperimentRecord& rec = result.records[0];
  CHECK(rec.instance == "one");
  CHECK(rec.seed == 0);
  CHECK(!rec.level.has_value());
  CHECK(rec.status == SolveStatus::Optimal);
  CHECK(rec.error.empty());
  CHECK(rec.loss_state == LossState::Available);
  REQUIRE(rec.loss.has_value());
  CHECK(*rec.loss == Rational(0));
  CHECK(!rec.bound_checked);  // the bound only applies to rounded levels
  CHECK(rec.time_s == doctest::Approx(rec.nodes / 1e6));

  const AggregateRow& row = result.aggregates[0];
  CHECK(!row.level.has_value());
  CHECK(row.solved == 1);
  CHECK(row.loss_n == 1);
  REQUIRE(row.sgm_loss_percent.has_value());
  CHECK(*row.sgm_loss_percent == 0.0);
}

TEST_CASE("experiment grid covers instances x seeds x levels deterministically") {
  ExperimentConfig cfg;
  cfg.instance_sources.push_back({"a", small_recipe(11)});
  cfg.instance_sources.push_back({"b", small_recipe(12)});
  cfg.levels = {std::nullopt, 2, 4};
  cfg.seeds = 2;

  ExperimentResult first = run_experiment(cfg);
  CHECK(first.records.size() == 2 * 2 * 3);
  CHECK(first.aggregates.size() == 3);
  for (const AggregateRow& row : first.aggregates) {
    CHECK(row.solved == 4);
    if (row.level) CHECK(row.loss_n == 4);
  }
  for (const ExperimentRecord& rec : first.records) {
    CHECK(rec.error.empty());
    CHECK(rec.status == SolveStatus::Optimal);
    if (rec.level) {
      CHECK(rec.bound_checked);  // generated knapsacks maximize over c >= 0
      CHECK(!rec.bound_violated);
    }
  }
  CHECK(!first.any_bound_violation);

  // Seeds regenerate recipe instances, so solve effort may differ per seed.
  std::map<int, int64_t> nodes_by_seed;
  for (const ExperimentRecord& rec : first.records) {
    if (rec.instance == "a" && !rec.level) nodes_by_seed[rec.seed] = rec.nodes;
  }
  CHECK(nodes_by_seed.size() == 2);

  ExperimentResult second = run_experiment(cfg);
  CHECK(records_csv(first.records) == records_csv(second.records));
  CHECK(emit_report(first.aggregates, first.records, ReportFormat::Csv) ==
        emit_report(second.aggregates, second.records, ReportFormat::Csv));
}

TEST_CASE("noise-free clusters keep generator counts flat across levels") {
  ExperimentConfig cfg;
  KnapsackRecipe quiet = small_recipe(31, 0);
  quiet.n = 12;
  quiet.k = 3;
  cfg.instance_sources.push_back({"q1", quiet});
  quiet.seed = 32;
  cfg.instance_sources.push_back({"q2", quiet});
  cfg.levels = {std::nullopt, 2, 3};
  cfg.seeds = 2;

  ExperimentResult result = run_experiment(cfg);
  std::map<std::pair<std::string, int>, int32_t> original_count;
  for (const ExperimentRecord& rec : result.records) {
    REQUIRE(rec.error.empty());
    if (!rec.level) original_count[{rec.instance, rec.seed}] = rec.generator_count;
  }
  for (const ExperimentRecord& rec : result.records) {
    CHECK(rec.generator_count == original_count[{rec.instance, rec.seed}]);
    CHECK(rec.generator_count >= 1);  // sigma 0 forces within-cluster twins
  }
  REQUIRE(result.aggregates.size() == 3);
  for (const AggregateRow& row : result.aggregates) {
    CHECK(row.sgm_generators == doctest::Approx(result.aggregates[0].sgm_generators));
  }
}

TEST_CASE("file sources keep coefficients and only rotate tie-breaking") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "bitround_harness_file_src";
  fs::create_directories(dir);
  fs::path opb = dir / "twin.opb";
  {
    BinaryProgram bp = generate_knapsack(small_recipe(55));
    std::ofstream out(opb);
    out << write_opb(bp);
  }

  ExperimentConfig cfg;
  cfg.instance_sources.push_back({"twin", opb.string()});
  cfg.levels = {std::nullopt, 3};
  cfg.seeds = 3;
  ExperimentResult result = run_experiment(cfg);
  CHECK(result.records.size() == 6);

  // Same file, same level: every seed must reach the same optimal value, so
  // the same nodes show up in the deterministic time column per level.
  std::map<std::string, std::vector<int64_t>> nodes_by_level;
  for (const ExperimentRecord& rec : result.records) {
    CHECK(rec.error.empty());
    CHECK(rec.status == SolveStatus::Optimal);
    nodes_by_level[level_label(rec.level)].push_back(rec.nodes);
  }
  CHECK(nodes_by_level["original"].size() == 3);
  CHECK(nodes_by_level["3"].size() == 3);

  fs::remove_all(dir);
}

TEST_CASE("unreadable sources produce error records and the run continues") {
  ExperimentConfig cfg;
  cfg.instance_sources.push_back({"missing", std::string("/nonexistent/nowhere.opb")});
  cfg.instance_sources.push_back({"good", small_recipe(9)});
  cfg.levels = {std::nullopt, 2};
  cfg.seeds = 2;

  ExperimentResult result = run_experiment(cfg);
  int errors = 0, good = 0;
  for (const ExperimentRecord& rec : result.records) {
    if (!rec.error.empty()) {
      ++errors;
      CHECK(rec.instance == "missing");
      CHECK(rec.error.find("cannot open") != std::string::npos);
    } else {
      ++good;
      CHECK(rec.instance == "good");
    }
  }
  CHECK(errors == 2);  // one per seed, not per level
  CHECK(good == 4);
  CHECK(result.aggregates.size() == 2);
  for (const AggregateRow& row : result.aggregates) CHECK(row.solved == 2);

  std::string csv = records_csv(result.records);
  CHECK(csv.find("missing,0,-,error") != std::string::npos);
}

TEST_CASE("invalid configs abort before any work") {
  ExperimentConfig cfg = minimal_config();
  cfg.levels.clear();
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.levels = {2, 2};
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.levels = {0};
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.seeds = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.symmetry_budget = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.budget.max_nodes = 0;
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.sgm_shift_loss = Rational(-1, 100);
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.instance_sources.push_back({"one", small_recipe(8)});  // duplicate id
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);

  cfg = minimal_config();
  cfg.instance_sources[0].id.clear();
  CHECK_THROWS_AS(run_experiment(cfg), ContractViolation);
}

TEST_CASE("experiment outputs land in the configured directory") {
  namespace fs = std::filesystem;
  ExperimentConfig cfg = minimal_config();
  fs::path dir = fs::temp_directory_path() / "bitround_harness_outputs";
  fs::remove_all(dir);
  cfg.output_dir = dir.string();

  ExperimentResult result = run_experiment(cfg);
  write_experiment_outputs(cfg, result);

  std::string records = slurp(dir / "records.csv");
  CHECK(records == records_csv(result.records));
  std::string aggregates = slurp(dir / "aggregates.csv");
  CHECK(aggregates.rfind("level,sgm_generators,", 0) == 0);
  std::string report = slurp(dir / "report.md");
  CHECK(report.rfind("# Rounding experiment", 0) == 0);
  CHECK(report.find("- levels: original") != std::string::npos);
  CHECK(report.find("- seeds per instance: 1") != std::string::npos);
  CHECK(report.find("- SGM shifts: time 1, generators 1, loss-percent 1/100") !=
        std::string::npos);
  CHECK(report.find("## Aggregates") != std::string::npos);

  fs::remove_all(dir);
}

TEST_CASE("config json parsing fills defaults and resolves paths") {
  std::string text = R"({
    "instance_sources": [
      {"path": "sub/x.opb"},
      {"id": "k", "knapsack": {"n": 8, "k": 2, "seed": 3, "noise_sigma": 0}},
      {"cflp": {"n": 2, "m": 3, "seed": 5}}
    ]
  })";
  ExperimentConfig cfg = parse_config_json(text, "/base/dir");
  REQUIRE(cfg.instance_sources.size() == 3);
  CHECK(std::get<std::string>(cfg.instance_sources[0].source) == "/base/dir/sub/x.opb");
  CHECK(cfg.instance_sources[0].id == "x");  // file stem
  CHECK(cfg.instance_sources[1].id == "k");
  const auto& knap = std::get<KnapsackRecipe>(cfg.instance_sources[1].source);
  CHECK(knap.n == 8);
  CHECK(knap.noise_sigma == 0);
  CHECK(knap.weight_low == 50);  // recipe default survives partial JSON
  CHECK(cfg.instance_sources[2].id == "cflp-n2-m3-r2-s5");

  REQUIRE(cfg.levels.size() == 5);
  CHECK(!cfg.levels[0].has_value());
  CHECK(cfg.levels[4] == 5);
  CHECK(cfg.seeds == 5);
  CHECK(cfg.budget.max_nodes == 10'000'000);
  CHECK(cfg.sgm_shift_loss == Rational(1, 100));
  CHECK(cfg.output_dir == "results");
}

TEST_CASE("config json accepts explicit fields") {
  std::string text = R"({
    "instance_sources": [{"id": "k", "knapsack": {"seed": 1}}],
    "levels": ["original", 2, 5],
    "seeds": 2,
    "budget": {"max_nodes": 1000, "max_time_s": 2.5},
    "symmetry_budget": 500,
    "sgm_shift_time": "1/2",
    "sgm_shift_generators": 2,
    "sgm_shift_loss": "0.25",
    "output": "out/run1"
  })";
  ExperimentConfig cfg = parse_config_json(text, "/base");
  REQUIRE(cfg.levels.size() == 3);
  CHECK(!cfg.levels[0].has_value());
  CHECK(cfg.levels[1] == 2);
  CHECK(cfg.levels[2] == 5);
  CHECK(cfg.seeds == 2);
  CHECK(cfg.budget.max_nodes == 1000);
  CHECK(cfg.budget.max_time_s == 2.5);
  CHECK(cfg.symmetry_budget == 500);
  CHECK(cfg.sgm_shift_time == Rational(1, 2));
  CHECK(cfg.sgm_shift_generators == Rational(2));
  CHECK(cfg.sgm_shift_loss == Rational(1, 4));
  CHECK(cfg.output_dir == "/base/out/run1");
}

TEST_CASE("config json rejects malformed input") {
  auto rejects = [](const std::string& text) {
    CHECK_THROWS_AS(parse_config_json(text, "."), FormatError);
  };
  rejects("not json at all");
  rejects(R"([1, 2, 3])");
  rejects(R"({"levels": [2]})");  // instance_sources missing
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "bogus": 1})");
  rejects(R"({"instance_sources": [{"knapsack": {}, "path": "x"}]})");
  rejects(R"({"instance_sources": [{"id": "k"}]})");
  rejects(R"({"instance_sources": [{"knapsack": {"weird": 1}}]})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "levels": []})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "levels": [2, 2]})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "levels": [64]})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "levels": ["orig"]})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "seeds": 0})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "sgm_shift_loss": 0.01})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "sgm_shift_loss": "-1"})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}], "sgm_shift_loss": "x"})");
  rejects(R"({"instance_sources": [{"id": "k", "knapsack": {}}],
              "budget": {"max_nodes": 0}})");
  rejects(R"({"instance_sources": [{"id": "d", "knapsack": {}},
                                   {"id": "d", "cflp": {}}]})");
}
