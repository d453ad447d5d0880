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

#ifndef BITROUND_HARNESS_HPP_
#define BITROUND_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "bitround/generators.hpp"
#include "bitround/model.hpp"
#include "bitround/rational.hpp"
#include "bitround/solvers.hpp"

namespace bitround {

// An instance comes from an OPB file or from one of the seeded generators.
struct InstanceSource {
  std::string id;
  std::variant<std::string, CflpRecipe, KnapsackRecipe> source;  // path or recipe
};

// Replication semantics: seed s regenerates recipe instances with
// recipe.seed + s, while file instances keep their coefficients and s only
// rotates the generic solver's tie-break order among equal-|c| variables.
struct ExperimentConfig {
  std::vector<InstanceSource> instance_sources;
  // nullopt denotes the unrounded original problem.
  std::vector<std::optional<int>> levels = {std::nullopt, 2, 3, 4, 5};
  int seeds = 5;
  SolveBudget budget;
  int64_t symmetry_budget = 1'000'000;
  Rational sgm_shift_time = Rational(1);
  Rational sgm_shift_generators = Rational(1);
  Rational sgm_shift_loss = Rational(1, 100);  // applied on the percent scale
  std::string output_dir = "results";
};

// One (instance, seed, level) cell. time_s is derived from the node count at
// a fixed nominal rate so that CSV output is byte-reproducible; wall_s holds
// the measured time and only ever reaches report.md.
struct ExperimentRecord {
  std::string instance;
  int seed = 0;
  std::optional<int> level;  // nullopt = original
  int32_t generator_count = 0;
  bool symmetry_timed_out = false;
  SolveStatus status = SolveStatus::BudgetExhausted;
  int64_t nodes = 0;
  double time_s = 0.0;
  double wall_s = 0.0;
  LossState loss_state = LossState::UnavailableNotBothOptimal;
  std::optional<Rational> loss;  // fraction, not percent
  bool bound_checked = false;    // maximization, c >= 0, loss available
  bool bound_violated = false;
  std::string error;  // nonempty marks a failed (instance, seed) cell
};

struct AggregateRow {
  std::optional<int> level;
  double sgm_generators = 0.0;
  std::optional<double> sgm_loss_percent;  // empty when loss_n == 0
  double sgm_time_s = 0.0;
  int solved = 0;
  int loss_n = 0;
};

struct ExperimentResult {
  std::vector<ExperimentRecord> records;
  std::vector<AggregateRow> aggregates;
  bool any_bound_violation = false;
  double total_wall_s = 0.0;
};

enum class ReportFormat { Csv, Markdown };

// exp(mean(ln(v + s))) - s with compensated summation, clamped into
// [min(values), max(values)]. Throws DomainError on an empty list, a negative
// value or shift, or shift 0 with a zero value.
double shifted_geometric_mean(std::span<const double> values, double shift);

// Runs the full (instance, seed, level) grid in a deterministic order.
// A source that fails to materialize yields one error record per seed and the
// run continues; an invalid config throws before any work starts.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// "original" or the decimal level.
std::string level_label(std::optional<int> level);

// Loss rendering shared by CSV and markdown: "+0.00" for zero, two decimals
// at or above one percent, otherwise mantissa-e-exponent like "3.41e-1".
std::string format_loss_percent(double percent);

// Header instance,seed,level,status,generators,sym_timed_out,nodes,time_s,
// loss_percent,loss_state,bound,note; one line per record.
std::string records_csv(const std::vector<ExperimentRecord>& records);

// Csv: the aggregate table under the fixed header
// level,sgm_generators,sgm_loss_percent,sgm_time_s,solved,loss_n.
// Markdown: the same table plus bound-violation and error sections and the
// note that times measure this artifact's own exact solvers.
std::string emit_report(const std::vector<AggregateRow>& rows,
                        const std::vector<ExperimentRecord>& records, ReportFormat format);

// records.csv, aggregates.csv and report.md under cfg.output_dir; report.md
// opens with the config echo (levels, seeds, budgets, SGM shifts) and the
// total wall time.
void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& result);

// JSON keys mirror the ExperimentConfig fields; relative paths resolve
// against base_dir. Throws FormatError on any malformed or unknown field.
ExperimentConfig parse_config_json(const std::string& text, const std::string& base_dir);

}  // namespace bitround

#endif  // BITROUND_HARNESS_HPP_
