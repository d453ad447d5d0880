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

#include "bitround/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "json.hpp"

#include "bitround/opb.hpp"
#include "bitround/rounding.hpp"
#include "bitround/symmetry.hpp"

namespace bitround {

namespace {

// Nominal node rate behind the deterministic time_s column.
constexpr double kNodesPerSecond = 1e6;

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string sanitize_csv(const std::string& s) {
  std::string out = s;
  for (char& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  }
  return out;
}

std::string status_label(const ExperimentRecord& r) {
  if (!r.error.empty()) return "error";
  switch (r.status) {
    case SolveStatus::Optimal:
      return "optimal";
    case SolveStatus::Infeasible:
      return "infeasible";
    case SolveStatus::BudgetExhausted:
      return "budget";
  }
  return "budget";
}

std::string loss_state_label(LossState state) {
  switch (state) {
    case LossState::Available:
      return "available";
    case LossState::UnavailableNotBothOptimal:
      return "unavailable";
    case LossState::UndefinedZeroOptimum:
      return "undefined";
  }
  return "unavailable";
}

}  // namespace

double shifted_geometric_mean(std::span<const double> values, double shift) {
  if (values.empty()) throw DomainError("shifted geometric mean of an empty list");
  if (!(shift >= 0)) throw DomainError("shift must be >= 0");
  double lo = values[0], hi = values[0];
  double sum = 0.0, comp = 0.0;
  for (double v : values) {
    if (!(v >= 0)) throw DomainError("shifted geometric mean requires values >= 0");
    if (v == 0 && shift == 0) throw DomainError("shift 0 with a zero value");
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    double x = std::log(v + shift);
    double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  double mean = (sum + comp) / static_cast<double>(values.size());
  double out = std::exp(mean) - shift;
  return std::clamp(out, lo, hi);
}

std::string level_label(std::optional<int> level) {
  return level ? std::to_string(*level) : "original";
}

std::string format_loss_percent(double percent) {
  if (percent == 0) return "+0.00";
  if (percent >= 1 || percent <= -1) return fmt("%.2f", percent);
  std::string s = fmt("%.2e", percent);  // e.g. "3.41e-01"
  auto epos = s.find('e');
  std::string mantissa = s.substr(0, epos);
  std::string exponent = s.substr(epos + 1);
  bool negative = exponent[0] == '-';
  if (exponent[0] == '+' || exponent[0] == '-') exponent.erase(0, 1);
  while (exponent.size() > 1 && exponent[0] == '0') exponent.erase(0, 1);
  if (exponent == "0") return mantissa;  // 0.999... rounded up to 1.00e+00
  return mantissa + "e" + (negative ? "-" : "") + exponent;
}

std::string records_csv(const std::vector<ExperimentRecord>& records) {
  std::ostringstream out;
  out << "instance,seed,level,status,generators,sym_timed_out,nodes,time_s,"
         "loss_percent,loss_state,bound,note\n";
  for (const ExperimentRecord& r : records) {
    out << sanitize_csv(r.instance) << ',' << r.seed << ','
        << (r.error.empty() ? level_label(r.level) : std::string("-")) << ','
        << status_label(r) << ','
        << r.generator_count << ',' << (r.symmetry_timed_out ? 1 : 0) << ',' << r.nodes
        << ',' << fmt("%.6f", r.time_s) << ',';
    if (r.loss_state == LossState::Available && r.loss) {
      out << format_loss_percent(r.loss->to_double() * 100.0);
    }
    out << ',' << loss_state_label(r.loss_state) << ','
        << (r.bound_checked ? (r.bound_violated ? "violated" : "ok") : "na") << ','
        << sanitize_csv(r.error) << '\n';
  }
  return out.str();
}

std::string emit_report(const std::vector<AggregateRow>& rows,
                        const std::vector<ExperimentRecord>& records, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "level,sgm_generators,sgm_loss_percent,sgm_time_s,solved,loss_n\n";
    for (const AggregateRow& row : rows) {
      out << level_label(row.level) << ',' << fmt("%.6f", row.sgm_generators) << ',';
      if (row.sgm_loss_percent) out << format_loss_percent(*row.sgm_loss_percent);
      out << ',' << fmt("%.6f", row.sgm_time_s) << ',' << row.solved << ',' << row.loss_n
          << '\n';
    }
    return out.str();
  }

  out << "## Aggregates\n\n"
      << "Times are node counts of this artifact's own exact solvers divided by a\n"
      << "nominal 1e6 nodes/s; they are not comparable to times from external\n"
      << "MIP or CP solvers.\n\n";
  out << "| level | sgm_generators | sgm_loss_percent | sgm_time_s | solved | loss_n |\n";
  out << "| --- | --- | --- | --- | --- | --- |\n";
  for (const AggregateRow& row : rows) {
    out << "| " << level_label(row.level) << " | " << fmt("%.2f", row.sgm_generators)
        << " | "
        << (row.sgm_loss_percent ? format_loss_percent(*row.sgm_loss_percent)
                                 : std::string("n/a"))
        << " | " << fmt("%.2f", row.sgm_time_s) << " | " << row.solved << " | " << row.loss_n
        << " |\n";
  }

  std::vector<const ExperimentRecord*> violations, errors;
  for (const ExperimentRecord& r : records) {
    if (r.bound_violated) violations.push_back(&r);
    if (!r.error.empty()) errors.push_back(&r);
  }
  if (!violations.empty()) {
    out << "\n## Loss-bound violations\n\n";
    for (const ExperimentRecord* r : violations) {
      out << "- " << r->instance << " seed " << r->seed << " level " << level_label(r->level)
          << ": loss " << (r->loss ? r->loss->to_string() : "?") << " exceeds the guarantee\n";
    }
  }
  if (!errors.empty()) {
    out << "\n## Errors\n\n";
    for (const ExperimentRecord* r : errors) {
      out << "- " << r->instance << " seed " << r->seed << ": " << r->error << "\n";
    }
  }
  return out.str();
}

namespace {

struct Materialized {
  BinaryProgram bp;
  uint64_t tie_break_seed;  // nonzero only for file sources
};

Materialized materialize(const InstanceSource& src, int seed) {
  if (const auto* path = std::get_if<std::string>(&src.source)) {
    std::ifstream in(*path);
    if (!in) throw Error("cannot open '" + *path + "'");
    BinaryProgram bp = parse_opb(in);
    return {std::move(bp), static_cast<uint64_t>(seed)};
  }
  if (const auto* cflp = std::get_if<CflpRecipe>(&src.source)) {
    CflpRecipe r = *cflp;
    r.seed += static_cast<uint64_t>(seed);
    return {generate_cflp(r), 0};
  }
  KnapsackRecipe r = std::get<KnapsackRecipe>(src.source);
  r.seed += static_cast<uint64_t>(seed);
  return {generate_knapsack(r), 0};
}

SolveResult run_solver(const BinaryProgram& bp, bool knapsack_form, const SolveBudget& budget,
                       uint64_t tie_break_seed) {
  if (knapsack_form) {
    auto form = as_knapsack(bp);
    if (!form) throw Error("internal harness error: knapsack form lost");
    return solve_knapsack(form->values, form->weights, form->capacity, budget);
  }
  return solve_bp(bp, budget, tie_break_seed);
}

SymmetryReport run_symmetry(const BinaryProgram& bp, int64_t budget) {
  SymmetryReport report = find_generators(build_colored_graph(bp), budget);
  // Generators are re-verified against the program on every run; a failure
  // here is a bug in the detector, not a property of the instance.
  for (const Permutation& g : report.generators) {
    if (!verify_symmetry(bp, g)) throw Error("internal symmetry error: unsound generator");
  }
  return report;
}

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.levels.empty()) throw ContractViolation("levels must be nonempty");
  if (cfg.seeds < 1) throw ContractViolation("seeds must be >= 1");
  if (cfg.symmetry_budget < 1) throw ContractViolation("symmetry budget must be positive");
  if (cfg.budget.max_nodes < 1 || !(cfg.budget.max_time_s > 0)) {
    throw ContractViolation("solve budget must be positive");
  }
  std::set<std::optional<int>> seen;
  for (std::optional<int> level : cfg.levels) {
    if (level && (*level < 1 || *level > 63)) {
      throw ContractViolation("levels must be 'original' or integers in [1, 63]");
    }
    if (!seen.insert(level).second) throw ContractViolation("duplicate level in config");
  }
  if (cfg.sgm_shift_time < Rational(0) || cfg.sgm_shift_generators < Rational(0) ||
      cfg.sgm_shift_loss < Rational(0)) {
    throw ContractViolation("SGM shifts must be >= 0");
  }
  std::set<std::string> ids;
  for (const InstanceSource& src : cfg.instance_sources) {
    if (src.id.empty()) throw ContractViolation("instance id must be nonempty");
    if (!ids.insert(src.id).second) {
      throw ContractViolation("duplicate instance id '" + src.id + "'");
    }
  }
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  ExperimentResult result;

  for (const InstanceSource& src : cfg.instance_sources) {
    for (int seed = 0; seed < cfg.seeds; ++seed) {
      std::vector<ExperimentRecord> cell;  // committed only on success
      try {
        Materialized inst = materialize(src, seed);
        const BinaryProgram& bp = inst.bp;
        const bool knapsack_form = as_knapsack(bp).has_value();

        SolveResult original = run_solver(bp, knapsack_form, cfg.budget, inst.tie_break_seed);
        SymmetryReport original_sym = run_symmetry(bp, cfg.symmetry_budget);

        bool traditional_scope = bp.sense() == Sense::Maximize;
        for (const auto& [var, coef] : bp.objective()) {
          if (coef < 0) traditional_scope = false;
        }

        for (std::optional<int> level : cfg.levels) {
          ExperimentRecord rec;
          rec.instance = src.id;
          rec.seed = seed;
          rec.level = level;

          const SolveResult* run = &original;
          SolveResult rounded_run;
          SymmetryReport sym;
          std::optional<int64_t> under_original;
          if (!level) {
            sym = original_sym;
            if (original.best_value) under_original = *original.best_value;
          } else {
            BinaryProgram rounded_bp = round_objective(bp, *level).first;
            rounded_run =
                run_solver(rounded_bp, knapsack_form, cfg.budget, inst.tie_break_seed);
            run = &rounded_run;
            sym = run_symmetry(rounded_bp, cfg.symmetry_budget);
            if (rounded_run.best_value) {
              under_original = evaluate_objective(bp, rounded_run.best_assignment);
            }
          }

          rec.status = run->status;
          rec.nodes = run->nodes_explored;
          rec.time_s = static_cast<double>(run->nodes_explored) / kNodesPerSecond;
          rec.wall_s = run->elapsed_s;
          rec.generator_count = sym.generator_count;
          rec.symmetry_timed_out = sym.timed_out;

          if (original.status == SolveStatus::Optimal && run->status == SolveStatus::Optimal) {
            if (*original.best_value == 0) {
              rec.loss_state = LossState::UndefinedZeroOptimum;
            } else {
              rec.loss_state = LossState::Available;
              rec.loss = objective_loss(*original.best_value, *under_original);
              if (level && traditional_scope) {
                rec.bound_checked = true;
                rec.bound_violated = *rec.loss > loss_bound_traditional(*level);
              }
            }
          }
          cell.push_back(std::move(rec));
        }
      } catch (const Error& e) {
        cell.clear();
        ExperimentRecord rec;
        rec.instance = src.id;
        rec.seed = seed;
        rec.error = e.what();
        cell.push_back(std::move(rec));
      }
      for (ExperimentRecord& rec : cell) {
        result.any_bound_violation = result.any_bound_violation || rec.bound_violated;
        result.records.push_back(std::move(rec));
      }
    }
  }

  for (std::optional<int> level : cfg.levels) {
    std::vector<double> generators, times, losses;
    int solved = 0;
    for (const ExperimentRecord& r : result.records) {
      if (!r.error.empty() || r.level != level) continue;
      generators.push_back(static_cast<double>(r.generator_count));
      times.push_back(r.time_s);
      if (r.status == SolveStatus::Optimal) ++solved;
      if (r.loss_state == LossState::Available && r.loss) {
        losses.push_back(r.loss->to_double() * 100.0);
      }
    }
    if (generators.empty()) continue;  // every cell at this level failed
    AggregateRow row;
    row.level = level;
    row.sgm_generators = shifted_geometric_mean(generators, cfg.sgm_shift_generators.to_double());
    row.sgm_time_s = shifted_geometric_mean(times, cfg.sgm_shift_time.to_double());
    row.solved = solved;
    row.loss_n = static_cast<int>(losses.size());
    if (!losses.empty()) {
      row.sgm_loss_percent = shifted_geometric_mean(losses, cfg.sgm_shift_loss.to_double());
    }
    result.aggregates.push_back(std::move(row));
  }

  result.total_wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_experiment_outputs(const ExperimentConfig& cfg, const ExperimentResult& result) {
  namespace fs = std::filesystem;
  fs::create_directories(cfg.output_dir);
  auto write_file = [&](const char* name, const std::string& content) {
    fs::path p = fs::path(cfg.output_dir) / name;
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot write '" + p.string() + "'");
    out << content;
  };
  write_file("records.csv", records_csv(result.records));
  write_file("aggregates.csv", emit_report(result.aggregates, result.records, ReportFormat::Csv));

  std::ostringstream md;
  md << "# Rounding experiment\n\n";
  md << "- levels:";
  for (std::optional<int> level : cfg.levels) md << ' ' << level_label(level);
  md << "\n- seeds per instance: " << cfg.seeds << "\n";
  md << "- solve budget: " << cfg.budget.max_nodes << " nodes";
  if (cfg.budget.max_time_s != std::numeric_limits<double>::infinity()) {
    md << ", " << fmt("%.3f", cfg.budget.max_time_s) << " s";
  }
  md << "\n- symmetry budget: " << cfg.symmetry_budget << " nodes\n";
  md << "- SGM shifts: time " << cfg.sgm_shift_time.to_string() << ", generators "
     << cfg.sgm_shift_generators.to_string() << ", loss-percent "
     << cfg.sgm_shift_loss.to_string() << "\n";
  md << "- instances: " << cfg.instance_sources.size() << ", records: "
     << result.records.size() << "\n";
  md << "- total wall time: " << fmt("%.2f", result.total_wall_s) << " s\n\n";
  md << emit_report(result.aggregates, result.records, ReportFormat::Markdown);
  write_file("report.md", md.str());
}

namespace {

using nlohmann::json;

[[noreturn]] void config_fail(const std::string& msg) { throw FormatError("config: " + msg); }

void check_keys(const json& obj, const char* what, std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find_if(allowed.begin(), allowed.end(),
                     [&](const char* a) { return key == a; }) == allowed.end()) {
      config_fail(std::string("unknown ") + what + " key '" + key + "'");
    }
  }
}

int64_t get_int(const json& v, const std::string& name) {
  if (!v.is_number_integer()) config_fail("'" + name + "' must be an integer");
  return v.get<int64_t>();
}

double get_number(const json& v, const std::string& name) {
  if (!v.is_number()) config_fail("'" + name + "' must be a number");
  return v.get<double>();
}

bool get_bool(const json& v, const std::string& name) {
  if (!v.is_boolean()) config_fail("'" + name + "' must be a boolean");
  return v.get<bool>();
}

std::string get_string(const json& v, const std::string& name) {
  if (!v.is_string()) config_fail("'" + name + "' must be a string");
  return v.get<std::string>();
}

// Shifts accept exact forms only: a JSON integer or a string for
// Rational::parse ("1", "1/100", "0.01"). A bare JSON float like 0.01 has no
// exact decimal value, so it is rejected with a pointer at the string form.
Rational get_shift(const json& v, const std::string& name) {
  Rational r;
  if (v.is_number_integer()) {
    r = Rational(v.get<int64_t>());
  } else if (v.is_string()) {
    try {
      r = Rational::parse(v.get<std::string>());
    } catch (const Error& e) {
      config_fail("'" + name + "': " + e.what());
    }
  } else {
    config_fail("'" + name + "' must be an integer or a string like \"1/100\"");
  }
  if (r < Rational(0)) config_fail("'" + name + "' must be >= 0");
  return r;
}

CflpRecipe parse_cflp_recipe(const json& obj) {
  check_keys(obj, "cflp", {"n", "m", "square_scale", "circle_scale", "decimal_round_digits",
                           "objective_scale", "fixed_cost_low", "fixed_cost_high", "seed"});
  CflpRecipe r;
  if (obj.contains("n")) r.n = static_cast<int32_t>(get_int(obj["n"], "cflp.n"));
  if (obj.contains("m")) r.m = static_cast<int32_t>(get_int(obj["m"], "cflp.m"));
  if (obj.contains("square_scale")) {
    r.square_scale = get_number(obj["square_scale"], "cflp.square_scale");
  }
  if (obj.contains("circle_scale")) {
    r.circle_scale = get_number(obj["circle_scale"], "cflp.circle_scale");
  }
  if (obj.contains("decimal_round_digits")) {
    r.decimal_round_digits =
        static_cast<int>(get_int(obj["decimal_round_digits"], "cflp.decimal_round_digits"));
  }
  if (obj.contains("objective_scale")) {
    r.objective_scale = get_int(obj["objective_scale"], "cflp.objective_scale");
  }
  if (obj.contains("fixed_cost_low")) {
    r.fixed_cost_low = get_int(obj["fixed_cost_low"], "cflp.fixed_cost_low");
  }
  if (obj.contains("fixed_cost_high")) {
    r.fixed_cost_high = get_int(obj["fixed_cost_high"], "cflp.fixed_cost_high");
  }
  if (obj.contains("seed")) r.seed = static_cast<uint64_t>(get_int(obj["seed"], "cflp.seed"));
  return r;
}

KnapsackRecipe parse_knapsack_recipe(const json& obj) {
  check_keys(obj, "knapsack",
             {"n", "k", "base_value_low", "base_value_high", "noise_sigma", "weight_low",
              "weight_high", "balanced", "seed"});
  KnapsackRecipe r;
  if (obj.contains("n")) r.n = static_cast<int32_t>(get_int(obj["n"], "knapsack.n"));
  if (obj.contains("k")) r.k = static_cast<int32_t>(get_int(obj["k"], "knapsack.k"));
  if (obj.contains("base_value_low")) {
    r.base_value_low = get_int(obj["base_value_low"], "knapsack.base_value_low");
  }
  if (obj.contains("base_value_high")) {
    r.base_value_high = get_int(obj["base_value_high"], "knapsack.base_value_high");
  }
  if (obj.contains("noise_sigma")) {
    r.noise_sigma = get_int(obj["noise_sigma"], "knapsack.noise_sigma");
  }
  if (obj.contains("weight_low")) r.weight_low = get_int(obj["weight_low"], "knapsack.weight_low");
  if (obj.contains("weight_high")) {
    r.weight_high = get_int(obj["weight_high"], "knapsack.weight_high");
  }
  if (obj.contains("balanced")) r.balanced = get_bool(obj["balanced"], "knapsack.balanced");
  if (obj.contains("seed")) {
    r.seed = static_cast<uint64_t>(get_int(obj["seed"], "knapsack.seed"));
  }
  return r;
}

std::string default_id(const InstanceSource& src) {
  if (const auto* path = std::get_if<std::string>(&src.source)) {
    return std::filesystem::path(*path).stem().string();
  }
  if (const auto* cflp = std::get_if<CflpRecipe>(&src.source)) {
    return "cflp-n" + std::to_string(cflp->n) + "-m" + std::to_string(cflp->m) + "-r" +
           std::to_string(cflp->decimal_round_digits) + "-s" + std::to_string(cflp->seed);
  }
  const auto& k = std::get<KnapsackRecipe>(src.source);
  return "knap-n" + std::to_string(k.n) + "-k" + std::to_string(k.k) +
         (k.balanced ? "-bal" : "-rnd") + "-s" + std::to_string(k.seed);
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    config_fail(e.what());
  }
  if (!root.is_object()) config_fail("top level must be an object");
  check_keys(root, "config",
             {"instance_sources", "levels", "seeds", "budget", "symmetry_budget",
              "sgm_shift_time", "sgm_shift_generators", "sgm_shift_loss", "output"});

  ExperimentConfig cfg;
  const std::filesystem::path base(base_dir);
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path.string() : (base / path).lexically_normal().string();
  };

  if (!root.contains("instance_sources") || !root["instance_sources"].is_array()) {
    config_fail("'instance_sources' must be an array");
  }
  for (const json& item : root["instance_sources"]) {
    if (!item.is_object()) config_fail("instance source must be an object");
    check_keys(item, "instance source", {"id", "path", "cflp", "knapsack"});
    int forms = item.contains("path") + item.contains("cflp") + item.contains("knapsack");
    if (forms != 1) {
      config_fail("instance source needs exactly one of 'path', 'cflp', 'knapsack'");
    }
    InstanceSource src;
    if (item.contains("path")) {
      src.source = resolve(get_string(item["path"], "path"));
    } else if (item.contains("cflp")) {
      if (!item["cflp"].is_object()) config_fail("'cflp' must be an object");
      src.source = parse_cflp_recipe(item["cflp"]);
    } else {
      if (!item["knapsack"].is_object()) config_fail("'knapsack' must be an object");
      src.source = parse_knapsack_recipe(item["knapsack"]);
    }
    src.id = item.contains("id") ? get_string(item["id"], "id") : default_id(src);
    cfg.instance_sources.push_back(std::move(src));
  }

  if (root.contains("levels")) {
    if (!root["levels"].is_array() || root["levels"].empty()) {
      config_fail("'levels' must be a nonempty array");
    }
    cfg.levels.clear();
    for (const json& v : root["levels"]) {
      if (v.is_string()) {
        if (v.get<std::string>() != "original") {
          config_fail("level strings must be \"original\"");
        }
        cfg.levels.push_back(std::nullopt);
      } else {
        int64_t l = get_int(v, "levels[]");
        if (l < 1 || l > 63) config_fail("integer levels must be in [1, 63]");
        cfg.levels.push_back(static_cast<int>(l));
      }
    }
  }
  if (root.contains("seeds")) {
    int64_t s = get_int(root["seeds"], "seeds");
    if (s < 1) config_fail("'seeds' must be >= 1");
    cfg.seeds = static_cast<int>(s);
  }
  if (root.contains("budget")) {
    const json& b = root["budget"];
    if (!b.is_object()) config_fail("'budget' must be an object");
    check_keys(b, "budget", {"max_nodes", "max_time_s"});
    if (b.contains("max_nodes")) {
      int64_t n = get_int(b["max_nodes"], "budget.max_nodes");
      if (n < 1) config_fail("'budget.max_nodes' must be >= 1");
      cfg.budget.max_nodes = n;
    }
    if (b.contains("max_time_s")) {
      double t = get_number(b["max_time_s"], "budget.max_time_s");
      if (!(t > 0)) config_fail("'budget.max_time_s' must be > 0");
      cfg.budget.max_time_s = t;
    }
  }
  if (root.contains("symmetry_budget")) {
    int64_t n = get_int(root["symmetry_budget"], "symmetry_budget");
    if (n < 1) config_fail("'symmetry_budget' must be >= 1");
    cfg.symmetry_budget = n;
  }
  if (root.contains("sgm_shift_time")) {
    cfg.sgm_shift_time = get_shift(root["sgm_shift_time"], "sgm_shift_time");
  }
  if (root.contains("sgm_shift_generators")) {
    cfg.sgm_shift_generators = get_shift(root["sgm_shift_generators"], "sgm_shift_generators");
  }
  if (root.contains("sgm_shift_loss")) {
    cfg.sgm_shift_loss = get_shift(root["sgm_shift_loss"], "sgm_shift_loss");
  }
  if (root.contains("output")) cfg.output_dir = resolve(get_string(root["output"], "output"));

  try {
    validate_config(cfg);
  } catch (const ContractViolation& e) {
    config_fail(e.what());
  }
  return cfg;
}

}  // namespace bitround
