#include "coldspare/allocation.hpp"

#include <algorithm>
#include <limits>

#include "coldspare/cost.hpp"
#include "coldspare/reliability.hpp"

namespace coldspare {

int effective_type_limit(const TeamScenario& scenario, const RobotBlueprint& blueprint,
                         int id) {
  int limit = blueprint.free_slots;
  auto bp = blueprint.per_type_limits.find(id);
  if (bp != blueprint.per_type_limits.end()) limit = std::min(limit, bp->second);
  auto shared = scenario.shared_type_limits.find(id);
  if (shared != scenario.shared_type_limits.end())
    limit = std::min(limit, shared->second);
  return limit;
}

RedundancyMap decode(const Allocation& allocation, const TeamScenario& scenario) {
  const TeamLayout layout = team_layout(scenario);
  if (allocation.genes.size() != layout.gene_count)
    throw ConfigError("allocation has " + std::to_string(allocation.genes.size()) +
                      " genes, scenario has " + std::to_string(layout.gene_count) +
                      " free slots");
  RedundancyMap redundancy(layout.robot_count());
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const auto [first, last] = layout.gene_span[j];
    for (std::size_t g = first; g < last; ++g) {
      const int id = allocation.genes[g];
      if (id == 0) continue;
      if (!scenario.catalog.contains(id))
        throw ConfigError("gene " + std::to_string(g) + " references unknown module id " +
                          std::to_string(id));
      redundancy.add_spare(j, id);
    }
  }
  return redundancy;
}

Allocation encode(const TeamScenario& scenario, const RedundancyMap& redundancy) {
  const TeamLayout layout = team_layout(scenario);
  if (redundancy.robot_count() != layout.robot_count())
    throw ConfigError("redundancy map does not match team size");
  Allocation allocation;
  allocation.genes.assign(layout.gene_count, 0);
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const auto [first, last] = layout.gene_span[j];
    std::size_t g = last;
    long stocked = redundancy.robot_total(j);
    if (stocked > static_cast<long>(last - first))
      throw ConstraintError("robot " + std::to_string(j) + " stocks " +
                            std::to_string(stocked) + " spares but has " +
                            std::to_string(last - first) + " free slots");
    // fill from the back so empty slots sit first, ids ascend
    const auto& spares = redundancy.robot_spares(j);
    for (auto it = spares.rbegin(); it != spares.rend(); ++it) {
      scenario.catalog.at(it->first);
      for (int c = 0; c < it->second; ++c) allocation.genes[--g] = it->first;
    }
  }
  return allocation;
}

void canonicalize(Allocation& allocation, const TeamScenario& scenario) {
  const TeamLayout layout = team_layout(scenario);
  if (allocation.genes.size() != layout.gene_count)
    throw ConfigError("allocation does not match scenario slot count");
  for (const auto& [first, last] : layout.gene_span)
    std::sort(allocation.genes.begin() + static_cast<std::ptrdiff_t>(first),
              allocation.genes.begin() + static_cast<std::ptrdiff_t>(last));
}

bool feasible(const Allocation& allocation, const TeamScenario& scenario) {
  const TeamLayout layout = team_layout(scenario);
  if (allocation.genes.size() != layout.gene_count) return false;
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
    const auto [first, last] = layout.gene_span[j];
    std::map<int, int> counts;
    for (std::size_t g = first; g < last; ++g) {
      const int id = allocation.genes[g];
      if (id == 0) continue;
      if (!scenario.catalog.contains(id)) return false;
      if (++counts[id] > effective_type_limit(scenario, bp, id)) return false;
    }
  }
  return true;
}

void repair(Allocation& allocation, const TeamScenario& scenario) {
  const TeamLayout layout = team_layout(scenario);
  if (allocation.genes.size() != layout.gene_count)
    throw ConfigError("allocation does not match scenario slot count");
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
    const auto [first, last] = layout.gene_span[j];
    std::map<int, int> counts;
    for (std::size_t g = first; g < last; ++g) {
      const int id = allocation.genes[g];
      if (id == 0) continue;
      if (++counts[id] > effective_type_limit(scenario, bp, id)) {
        allocation.genes[g] = 0;
        --counts[id];
      }
    }
  }
}

EvalResult evaluate(const Allocation& allocation, const TeamScenario& scenario,
                    double months) {
  // Shape errors (length, unknown ids) throw; limit violations only
  // mark the result infeasible.
  const RedundancyMap redundancy = decode(allocation, scenario);
  EvalResult result;
  result.feasible = feasible(allocation, scenario);
  if (!result.feasible) return result;
  result.reliability = team_reliability(scenario, redundancy, months);
  result.cost = acquisition_cost(scenario, redundancy);
  return result;
}

void validate_ga_config(const GAConfig& config) {
  if (config.population_size < 4 || config.population_size % 2 != 0)
    throw DomainError("population_size must be even and >= 4");
  if (config.generations < 0) throw DomainError("generations must be >= 0");
  if (!(config.crossover_rate >= 0.0 && config.crossover_rate <= 1.0))
    throw DomainError("crossover_rate must be in [0,1]");
  if (config.mutation_rate > 1.0)
    throw DomainError("mutation_rate must be in [0,1] (or negative for 1/genes)");
  if (config.tournament_size != 2)
    throw DomainError("tournament_size is fixed at 2");
}

}  // namespace coldspare
