#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coldspare/allocation.hpp"
#include "coldspare/cost.hpp"
#include "coldspare/enumerate.hpp"
#include "coldspare/nsga2.hpp"
#include "coldspare/reliability.hpp"
#include "coldspare/scenario_io.hpp"
#include "coldspare/simulate.hpp"
#include "coldspare/types.hpp"

namespace {

using namespace coldspare;

constexpr int kExitOk = 0;
constexpr int kExitDiagnostic = 1;  // also unexpected internal failures
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitCeiling = 4;

struct AllocationOption {
  std::string text;  // inline genes or a file holding them; empty = unset
};

/// Resolve the spare allocation for a run: --allocation wins, then the
/// scenario's storage section, then the all-empty assignment.
Allocation resolve_allocation(const AllocationOption& option,
                              const LoadedScenario& loaded) {
  if (!option.text.empty()) {
    std::ifstream file(option.text);
    if (file) {
      std::ostringstream buffer;
      buffer << file.rdbuf();
      return parse_genes(buffer.str());
    }
    return parse_genes(option.text);
  }
  if (loaded.storage) return encode(loaded.scenario, *loaded.storage);
  Allocation allocation;
  allocation.genes.assign(team_layout(loaded.scenario).gene_count, 0);
  return allocation;
}

void print_genes(std::ostream& out, const Allocation& allocation) {
  out << "genes";
  for (int gene : allocation.genes) out << ' ' << gene;
  out << '\n';
}

/// Write to --out when given, stdout otherwise.
void deliver(const std::string& out_path, const std::string& payload) {
  if (out_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file \"" + out_path + "\"");
  out << payload;
}

std::uint64_t default_ceiling() {
  const char* env = std::getenv("COLDSPARE_CEILING");
  if (env == nullptr || *env == '\0') return kDefaultEnumerationCeiling;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0')
    throw ConfigError(std::string("COLDSPARE_CEILING: \"") + env +
                      "\" is not a count");
  return value;
}

int run_evaluate(const std::string& scenario_path, double months,
                 const AllocationOption& allocation_option) {
  const LoadedScenario loaded = load_scenario_file(scenario_path);
  const TeamScenario& scenario = loaded.scenario;
  const TeamLayout layout = team_layout(scenario);
  const Allocation allocation = resolve_allocation(allocation_option, loaded);
  const RedundancyMap redundancy = decode(allocation, scenario);

  if (!feasible(allocation, scenario)) {
    std::cerr << "error: allocation violates per-type spare limits\n";
    return kExitInfeasible;
  }

  std::ostringstream report;
  report << "scenario " << scenario_path << '\n';
  report << "time_months " << format_fixed(months) << '\n';
  report << "requirement " << to_string(scenario.requirement) << '\n';
  print_genes(report, allocation);

  report << "team_reliability "
         << format_fixed(team_reliability(scenario, redundancy, months)) << '\n';
  const std::vector<double> rels = per_robot_reliabilities(
      scenario, layout, redundancy, months, SwitchSource::SelfDirected);
  report << "team_reliability_full "
         << format_fixed(
                requirement_reliability(FunctionalRequirement::full(), layout, rels))
         << '\n';
  report << "team_reliability_minimal "
         << format_fixed(requirement_reliability(FunctionalRequirement::minimal(),
                                                 layout, rels))
         << '\n';
  if (scenario.requirement.kind == FunctionalRequirement::Kind::Partial)
    report << "team_reliability_partial "
           << format_fixed(
                  requirement_reliability(scenario.requirement, layout, rels))
           << '\n';
  report << "team_reliability_own_storage "
         << format_fixed(team_reliability_own_storage(scenario, redundancy, months))
         << '\n';

  for (std::size_t j = 0; j < layout.robot_count(); ++j)
    report << "robot " << j + 1 << " reliability " << format_fixed(rels[j]) << '\n';

  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& blueprint = scenario.blueprints[layout.blueprint_of[j]];
    for (Capability cap : {Capability::Primary, Capability::Report,
                           Capability::MoveManipulate, Capability::Manipulate}) {
      report << "robot " << j + 1 << " capability " << to_string(cap) << ' ';
      try {
        report << format_fixed(capability_reliability(
            blueprint, redundancy.robot_spares(j), scenario.catalog, months, cap));
      } catch (const ConfigError&) {
        report << "absent";  // the blueprint lacks a role this ability needs
      }
      report << '\n';
    }
  }

  const CostBreakdown costs = cost_breakdown(scenario, redundancy);
  report << "acquisition_cost " << format_fixed(costs.acquisition) << '\n';
  report << "cm_cost_rate_per_month " << format_fixed(costs.cm_rate_per_month) << '\n';
  report << "continuous_running_cost_rate "
         << format_fixed(costs.continuous_rate_per_month) << '\n';
  for (const auto& [id, line] : costs.per_module)
    report << "module " << id << " count " << line.count << " subtotal "
           << format_fixed(line.subtotal) << '\n';

  std::cout << report.str();
  return kExitOk;
}

int run_optimize(const std::string& scenario_path, double months, int population,
                 int generations, std::uint64_t seed, const std::string& out_path) {
  const LoadedScenario loaded = load_scenario_file(scenario_path);
  GAConfig config;
  config.population_size = population;
  config.generations = generations;
  config.rng_seed = seed;
  const OptimizeResult result = nsga2_optimize(loaded.scenario, months, config);
  std::ostringstream csv;
  write_front_csv(csv, result.front);
  deliver(out_path, csv.str());
  return kExitOk;
}

int run_simulate(const std::string& scenario_path, double months, long trials,
                 std::uint64_t seed, const AllocationOption& allocation_option,
                 const std::string& storage_name) {
  const LoadedScenario loaded = load_scenario_file(scenario_path);
  const TeamScenario& scenario = loaded.scenario;
  const Allocation allocation = resolve_allocation(allocation_option, loaded);
  const RedundancyMap redundancy = decode(allocation, scenario);
  if (!feasible(allocation, scenario)) {
    std::cerr << "error: allocation violates per-type spare limits\n";
    return kExitInfeasible;
  }

  SimConfig config;
  config.trials = trials;
  config.rng_seed = seed;
  config.horizon_months = months;
  config.storage_mode = storage_mode_from_string(storage_name);

  // PerRobot simulation has an exact closed-form counterpart; Shared pooling
  // does not, so there the analytic value is only the dedicated-stock
  // reference and the z-diagnostic stays informational.
  const bool exact_counterpart = config.storage_mode == StorageMode::PerRobot;
  const double analytic =
      exact_counterpart ? team_reliability_own_storage(scenario, redundancy, months)
                        : team_reliability(scenario, redundancy, months);
  const ReliabilityEstimate estimate = estimate_reliability(scenario, redundancy, config);

  // z-score against the binomial spread implied by the analytic value, which
  // stays meaningful even when a tiny sample produces estimate 0 or 1
  const double spread = std::sqrt(analytic * (1.0 - analytic) /
                                  static_cast<double>(estimate.trials));
  const double difference = estimate.estimate - analytic;
  const double z = difference == 0.0 ? 0.0 : difference / spread;

  std::ostringstream report;
  report << "scenario " << scenario_path << '\n';
  report << "time_months " << format_fixed(months) << '\n';
  report << "storage " << to_string(config.storage_mode) << '\n';
  report << "trials " << estimate.trials << '\n';
  print_genes(report, allocation);
  report << "analytic_reliability " << format_fixed(analytic) << '\n';
  report << "estimate " << format_fixed(estimate.estimate) << '\n';
  report << "std_error " << format_fixed(estimate.std_error) << '\n';
  report << "z_score " << format_fixed(z) << '\n';
  std::cout << report.str();

  if (exact_counterpart && std::abs(z) > 5.0) {
    std::cerr << "error: simulation disagrees with the analytic value (|z| > 5)\n";
    return kExitDiagnostic;
  }
  return kExitOk;
}

int run_enumerate(const std::string& scenario_path, double months,
                  std::uint64_t ceiling, const std::string& out_path) {
  const LoadedScenario loaded = load_scenario_file(scenario_path);
  const EnumerationResult result =
      exhaustive_enumerate(loaded.scenario, months, ceiling);
  std::cerr << "search_space " << count_to_string(result.search_space) << '\n';
  if (!result.enumerated) {
    std::cerr << "error: search space exceeds ceiling " << ceiling
              << ", enumeration refused\n";
    return kExitCeiling;
  }
  std::ostringstream csv;
  write_front_csv(csv, result.front);
  deliver(out_path, csv.str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cold-standby redundancy toolkit for modular robot teams"};
  app.require_subcommand(1);

  std::string scenario_path;
  double time_months = 0.0;
  AllocationOption allocation;
  std::string out_path;
  int population = 100;
  int generations = 200;
  std::uint64_t seed = 1;
  long trials = 100000;
  std::string storage_name = "per_robot";
  std::uint64_t ceiling = 0;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("scenario", scenario_path, "scenario JSON file")
        ->required()
        ->check(CLI::ExistingFile);
    return cmd->add_option("--time", time_months,
                           "evaluation time in months (default: scenario horizon)");
  };

  CLI::App* evaluate_cmd = app.add_subcommand(
      "evaluate", "analytic reliability and cost of one allocation");
  CLI::Option* evaluate_time = add_common(evaluate_cmd);
  evaluate_cmd->add_option("--allocation", allocation.text,
                           "gene vector, inline or a file holding one");

  CLI::App* optimize_cmd =
      app.add_subcommand("optimize", "reliability/cost Pareto front search");
  CLI::Option* optimize_time = add_common(optimize_cmd);
  optimize_cmd->add_option("--pop", population, "population size (default 100)");
  optimize_cmd->add_option("--gens", generations, "generations (default 200)");
  optimize_cmd->add_option("--seed", seed, "random seed (default 1)");
  optimize_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  CLI::App* simulate_cmd =
      app.add_subcommand("simulate", "Monte-Carlo check of the analytic value");
  CLI::Option* simulate_time = add_common(simulate_cmd);
  simulate_cmd->add_option("--trials", trials, "mission count (default 100000)");
  simulate_cmd->add_option("--seed", seed, "random seed (default 1)");
  simulate_cmd->add_option("--allocation", allocation.text,
                           "gene vector, inline or a file holding one");
  simulate_cmd->add_option("--storage", storage_name,
                           "spare stock model: per_robot or shared (default per_robot)");

  CLI::App* enumerate_cmd = app.add_subcommand(
      "enumerate", "exact Pareto front by exhaustive enumeration");
  CLI::Option* enumerate_time = add_common(enumerate_cmd);
  CLI::Option* ceiling_option = enumerate_cmd->add_option(
      "--ceiling", ceiling,
      "largest raw search space to enumerate (default: COLDSPARE_CEILING or 10^7)");
  enumerate_cmd->add_option("--out", out_path, "write the CSV here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitInput;
  }

  try {
    const auto scenario_horizon = [&]() {
      return load_scenario_file(scenario_path).scenario.horizon_months;
    };
    if (evaluate_cmd->parsed()) {
      if (!evaluate_time->count()) time_months = scenario_horizon();
      return run_evaluate(scenario_path, time_months, allocation);
    }
    if (optimize_cmd->parsed()) {
      if (!optimize_time->count()) time_months = scenario_horizon();
      return run_optimize(scenario_path, time_months, population, generations, seed,
                          out_path);
    }
    if (simulate_cmd->parsed()) {
      if (!simulate_time->count()) time_months = scenario_horizon();
      return run_simulate(scenario_path, time_months, trials, seed, allocation,
                          storage_name);
    }
    if (!enumerate_time->count()) time_months = scenario_horizon();
    if (!ceiling_option->count()) ceiling = default_ceiling();
    return run_enumerate(scenario_path, time_months, ceiling, out_path);
  } catch (const ConstraintError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInfeasible;
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  } catch (const DomainError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "unexpected error: " << err.what() << '\n';
    return kExitDiagnostic;
  }
}
