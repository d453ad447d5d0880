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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "bitround/harness.hpp"
#include "bitround/opb.hpp"
#include "bitround/rounding.hpp"
#include "bitround/solvers.hpp"
#include "bitround/symmetry.hpp"

namespace {

using nlohmann::json;

bitround::BinaryProgram load_program(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bitround::Error("cannot open '" + path + "'");
  return bitround::parse_opb(in);
}

void save_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bitround::Error("cannot write '" + path + "'");
  out << content;
}

// "lo:hi" -> pair of integers.
std::pair<int64_t, int64_t> parse_range(const std::string& s, const std::string& what) {
  auto colon = s.find(':');
  if (colon == std::string::npos) {
    throw bitround::FormatError(what + " must look like lo:hi");
  }
  try {
    return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw bitround::FormatError(what + " must look like lo:hi");
  }
}

std::string status_name(bitround::SolveStatus status) {
  switch (status) {
    case bitround::SolveStatus::Optimal:
      return "optimal";
    case bitround::SolveStatus::Infeasible:
      return "infeasible";
    case bitround::SolveStatus::BudgetExhausted:
      return "budget-exhausted";
  }
  return "budget-exhausted";
}

// Runs of equal bits as "bit x count", e.g. "1x3 0x57".
std::string run_length_encode(const bitround::Assignment& x) {
  if (x.empty()) return "(empty)";
  std::ostringstream out;
  size_t i = 0;
  while (i < x.size()) {
    size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    if (i > 0) out << ' ';
    out << (x[i] ? '1' : '0') << 'x' << (j - i);
    i = j;
  }
  return out.str();
}

json solve_result_json(const bitround::SolveResult& r) {
  json out;
  out["status"] = status_name(r.status);
  if (r.best_value) {
    out["value"] = *r.best_value;
    out["assignment_rle"] = run_length_encode(r.best_assignment);
  }
  out["nodes"] = r.nodes_explored;
  return out;
}

struct GenerateCommon {
  std::string output;
};

int run_generate(const bitround::BinaryProgram& bp, const std::string& recipe_echo,
                 const std::string& output) {
  save_text(output, bitround::write_opb(bp, {recipe_echo}));
  std::cout << bp.name() << ": " << bp.num_vars() << " variables, "
            << bp.constraints().size() << " constraints -> " << output << "\n";
  return 0;
}

int run_round(const std::string& input, const std::string& output, int level,
              const std::string& report_path) {
  bitround::BinaryProgram bp = load_program(input);
  auto [rounded, report] = bitround::round_objective(bp, level);
  save_text(output, bitround::write_opb(rounded));
  if (!report_path.empty()) {
    json j;
    j["level"] = report.level;
    if (report.epsilon) j["epsilon"] = report.epsilon->to_string();
    if (report.traditional_bound) j["traditional_bound"] = report.traditional_bound->to_string();
    if (report.loss_bound) j["loss_bound"] = report.loss_bound->to_string();
    j["per_coefficient"] = json::array();
    for (const auto& c : report.per_coefficient) {
      j["per_coefficient"].push_back({{"variable", c.variable},
                                      {"original", c.original},
                                      {"rounded", c.rounded},
                                      {"bit_len", c.bit_len}});
    }
    save_text(report_path, j.dump(2) + "\n");
  }
  int changed = 0;
  for (const auto& c : report.per_coefficient) {
    if (c.original != c.rounded) ++changed;
  }
  std::cout << "rounded " << bp.name() << " at level " << level << ": " << changed << " of "
            << report.per_coefficient.size() << " coefficients changed -> " << output << "\n";
  return 0;
}

int run_symmetry(const std::string& input, int64_t budget, const std::string& json_path) {
  bitround::BinaryProgram bp = load_program(input);
  bitround::SymmetryReport report =
      bitround::find_generators(bitround::build_colored_graph(bp), budget);
  std::cout << bp.name() << ": " << report.generator_count << " generators, "
            << report.orbit_partition.size() << " variable orbits, " << report.search_nodes
            << " search nodes" << (report.timed_out ? " (budget exhausted)" : "") << "\n";
  for (const bitround::Permutation& g : report.generators) {
    std::cout << "  " << bitround::cycle_notation(g) << "\n";
  }
  if (!json_path.empty()) {
    json j;
    j["generator_count"] = report.generator_count;
    j["generators"] = json::array();
    for (const bitround::Permutation& g : report.generators) {
      j["generators"].push_back(bitround::cycle_notation(g));
    }
    j["orbit_sizes"] = json::array();
    for (const auto& orbit : report.orbit_partition) {
      j["orbit_sizes"].push_back(orbit.size());
    }
    j["search_nodes"] = report.search_nodes;
    j["timed_out"] = report.timed_out;
    save_text(json_path, j.dump(2) + "\n");
  }
  return 0;
}

int run_solve(const std::string& input, int64_t budget_nodes) {
  bitround::BinaryProgram bp = load_program(input);
  bitround::SolveBudget budget;
  budget.max_nodes = budget_nodes;
  bitround::SolveResult r;
  if (auto form = bitround::as_knapsack(bp)) {
    r = bitround::solve_knapsack(form->values, form->weights, form->capacity, budget);
  } else {
    r = bitround::solve_bp(bp, budget);
  }
  std::cout << "status: " << status_name(r.status) << "\n";
  if (r.best_value) {
    std::cout << "value: " << *r.best_value << "\n";
    std::cout << "assignment: " << run_length_encode(r.best_assignment) << "\n";
  }
  std::cout << "nodes: " << r.nodes_explored << "\n";
  return 0;
}

int run_certify(const std::string& input, int level, int64_t budget_nodes) {
  bitround::BinaryProgram bp = load_program(input);
  bitround::SolveBudget budget;
  budget.max_nodes = budget_nodes;
  bitround::PairReport pair = bitround::certify_pair(bp, level, budget);
  json j;
  j["level"] = pair.level;
  j["epsilon"] = pair.epsilon.to_string();
  j["loss_bound"] = pair.loss_bound.to_string();
  j["original"] = solve_result_json(pair.original);
  j["rounded"] = solve_result_json(pair.rounded);
  if (pair.rounded_under_original) j["rounded_under_original"] = *pair.rounded_under_original;
  switch (pair.loss_state) {
    case bitround::LossState::Available:
      j["loss_state"] = "available";
      break;
    case bitround::LossState::UnavailableNotBothOptimal:
      j["loss_state"] = "unavailable";
      break;
    case bitround::LossState::UndefinedZeroOptimum:
      j["loss_state"] = "undefined-zero-optimum";
      break;
  }
  if (pair.loss) {
    j["loss"] = pair.loss->to_string();
    j["loss_percent"] = bitround::format_loss_percent(pair.loss->to_double() * 100.0);
  }
  j["envelope_ok"] = pair.envelope_ok;
  j["traditional_applicable"] = pair.traditional_applicable;
  if (pair.traditional_ok) j["traditional_ok"] = *pair.traditional_ok;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_experiment_cmd(const std::string& config_path) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open '" << config_path << "'\n";
    return 3;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  bitround::ExperimentConfig cfg;
  try {
    cfg = bitround::parse_config_json(
        buf.str(), std::filesystem::path(config_path).parent_path().string());
  } catch (const bitround::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  bitround::ExperimentResult result = bitround::run_experiment(cfg);
  bitround::write_experiment_outputs(cfg, result);
  int errors = 0;
  for (const auto& r : result.records) {
    if (!r.error.empty()) ++errors;
  }
  std::cout << result.records.size() << " records, " << result.aggregates.size()
            << " aggregate rows -> " << cfg.output_dir << "\n";
  if (errors > 0) std::cout << errors << " error records (see records.csv)\n";
  if (result.any_bound_violation) {
    std::cerr << "guarantee violation: a loss exceeded its bound (see report.md)\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"objective-coefficient bit rounding toolkit for binary programs"};
  app.require_subcommand(1);

  auto* generate = app.add_subcommand("generate", "generate a seeded instance");
  generate->require_subcommand(1);

  bitround::CflpRecipe cflp_recipe;
  std::string cflp_fixed_costs;
  GenerateCommon cflp_out;
  auto* gen_cflp = generate->add_subcommand("cflp", "capacitated facility location");
  gen_cflp->add_option("--n", cflp_recipe.n, "facilities");
  gen_cflp->add_option("--m", cflp_recipe.m, "customers");
  gen_cflp->add_option("--decimals", cflp_recipe.decimal_round_digits,
                       "distance rounding digits");
  gen_cflp->add_option("--square-scale", cflp_recipe.square_scale, "customer square side");
  gen_cflp->add_option("--circle-scale", cflp_recipe.circle_scale, "facility circle radius");
  gen_cflp->add_option("--objective-scale", cflp_recipe.objective_scale,
                       "integer cost scale factor");
  gen_cflp->add_option("--fixed-costs", cflp_fixed_costs, "facility cost range lo:hi");
  gen_cflp->add_option("--seed", cflp_recipe.seed, "generator seed");
  gen_cflp->add_option("-o,--output", cflp_out.output, "output OPB path")->required();

  bitround::KnapsackRecipe knap_recipe;
  std::string knap_values, knap_weights;
  bool knap_random_sizes = false;
  GenerateCommon knap_out;
  auto* gen_knap = generate->add_subcommand("knapsack", "clustered knapsack");
  gen_knap->add_option("--n", knap_recipe.n, "items");
  gen_knap->add_option("--k", knap_recipe.k, "clusters");
  auto* balanced_flag = gen_knap->add_flag("--balanced", "equal-size clusters (default)");
  auto* random_flag =
      gen_knap->add_flag("--random-sizes", knap_random_sizes, "random cluster sizes");
  balanced_flag->excludes(random_flag);
  gen_knap->add_option("--values", knap_values, "base value range lo:hi");
  gen_knap->add_option("--sigma", knap_recipe.noise_sigma, "value noise half-width");
  gen_knap->add_option("--weights", knap_weights, "weight range lo:hi");
  gen_knap->add_option("--seed", knap_recipe.seed, "generator seed");
  gen_knap->add_option("-o,--output", knap_out.output, "output OPB path")->required();

  std::string round_in, round_out, round_report;
  int round_level = 0;
  auto* round = app.add_subcommand("round", "round objective coefficients to level bits");
  round->add_option("--level", round_level, "bits to keep")->required();
  round->add_option("input", round_in, "input OPB")->required();
  round->add_option("output", round_out, "output OPB")->required();
  round->add_option("--report", round_report, "write a JSON rounding report");

  std::string sym_in, sym_json;
  int64_t sym_budget = 1'000'000;
  auto* symmetry = app.add_subcommand("symmetry", "detect formulation symmetries");
  symmetry->add_option("input", sym_in, "input OPB")->required();
  symmetry->add_option("--budget", sym_budget, "search node budget");
  symmetry->add_option("--json", sym_json, "write a JSON symmetry report");

  std::string solve_in;
  int64_t solve_budget = 10'000'000;
  auto* solve = app.add_subcommand("solve", "solve exactly at desk scale");
  solve->add_option("input", solve_in, "input OPB")->required();
  solve->add_option("--budget-nodes", solve_budget, "search node budget");

  std::string certify_in;
  int certify_level = 0;
  int64_t certify_budget = 10'000'000;
  auto* certify = app.add_subcommand("certify", "solve original and rounded, check bounds");
  certify->add_option("input", certify_in, "input OPB")->required();
  certify->add_option("--level", certify_level, "bits to keep")->required();
  certify->add_option("--budget-nodes", certify_budget, "search node budget");

  std::string experiment_config;
  auto* experiment = app.add_subcommand("experiment", "run a configured level sweep");
  experiment->add_option("--config", experiment_config, "experiment config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_cflp->parsed()) {
      if (!cflp_fixed_costs.empty()) {
        auto [lo, hi] = parse_range(cflp_fixed_costs, "--fixed-costs");
        cflp_recipe.fixed_cost_low = lo;
        cflp_recipe.fixed_cost_high = hi;
      }
      std::ostringstream echo;
      echo << "recipe: cflp n=" << cflp_recipe.n << " m=" << cflp_recipe.m
           << " square=" << cflp_recipe.square_scale << " circle=" << cflp_recipe.circle_scale
           << " decimals=" << cflp_recipe.decimal_round_digits
           << " scale=" << cflp_recipe.objective_scale << " fixed=["
           << cflp_recipe.fixed_cost_low << "," << cflp_recipe.fixed_cost_high
           << ") seed=" << cflp_recipe.seed;
      return run_generate(bitround::generate_cflp(cflp_recipe), echo.str(), cflp_out.output);
    }
    if (gen_knap->parsed()) {
      knap_recipe.balanced = !knap_random_sizes;
      if (!knap_values.empty()) {
        auto [lo, hi] = parse_range(knap_values, "--values");
        knap_recipe.base_value_low = lo;
        knap_recipe.base_value_high = hi;
      }
      if (!knap_weights.empty()) {
        auto [lo, hi] = parse_range(knap_weights, "--weights");
        knap_recipe.weight_low = lo;
        knap_recipe.weight_high = hi;
      }
      std::ostringstream echo;
      echo << "recipe: knapsack n=" << knap_recipe.n << " k=" << knap_recipe.k
           << (knap_recipe.balanced ? " balanced" : " random-sizes") << " values=["
           << knap_recipe.base_value_low << "," << knap_recipe.base_value_high
           << ") sigma=" << knap_recipe.noise_sigma << " weights=[" << knap_recipe.weight_low
           << "," << knap_recipe.weight_high << ") seed=" << knap_recipe.seed;
      return run_generate(bitround::generate_knapsack(knap_recipe), echo.str(),
                          knap_out.output);
    }
    if (round->parsed()) return run_round(round_in, round_out, round_level, round_report);
    if (symmetry->parsed()) return run_symmetry(sym_in, sym_budget, sym_json);
    if (solve->parsed()) return run_solve(solve_in, solve_budget);
    if (certify->parsed()) return run_certify(certify_in, certify_level, certify_budget);
    if (experiment->parsed()) return run_experiment_cmd(experiment_config);
  } catch (const bitround::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
