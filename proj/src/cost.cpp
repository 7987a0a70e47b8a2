#include "coldspare/cost.hpp"

#include <set>

namespace coldspare {

double mttf_months(double failure_rate) {
  if (!(failure_rate > 0.0)) throw DomainError("failure_rate must be > 0");
  return 1.0 / failure_rate;
}

double cm_cost_rate(double failure_rate, double maintenance_cost) {
  if (!(failure_rate > 0.0)) throw DomainError("failure_rate must be > 0");
  if (!(maintenance_cost >= 0.0)) throw DomainError("maintenance_cost must be >= 0");
  return failure_rate * maintenance_cost;
}

double acquisition_cost(const TeamScenario& scenario, const RedundancyMap& redundancy) {
  return cost_breakdown(scenario, redundancy).acquisition;
}

double continuous_running_cost(const Catalog& catalog, int team_size,
                               const std::vector<int>& active_types,
                               RunningCostModel model) {
  if (team_size < 0) throw DomainError("team_size must be >= 0");
  double per_robot = 0.0;
  for (int id : active_types) {
    const ModuleTypeSpec& spec = catalog.at(id);
    per_robot += model == RunningCostModel::MttfWeighted
                     ? spec.cost / spec.failure_rate
                     : spec.cost * spec.failure_rate;
  }
  return team_size * per_robot;
}

CostBreakdown cost_breakdown(const TeamScenario& scenario,
                             const RedundancyMap& redundancy) {
  const TeamLayout layout = team_layout(scenario);
  if (redundancy.robot_count() != layout.robot_count())
    throw ConfigError("redundancy map does not match team size");

  CostBreakdown breakdown;
  std::set<int> active_types;
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
    for (int id : bp.active_modules) {
      const ModuleTypeSpec& spec = scenario.catalog.at(id);
      breakdown.per_module[id].count += 1;
      breakdown.cm_rate_per_month += cm_cost_rate(spec.failure_rate, spec.maintenance_cost);
      active_types.insert(id);
    }
    for (const auto& [id, count] : redundancy.robot_spares(j)) {
      scenario.catalog.at(id);  // reject unknown ids
      breakdown.per_module[id].count += count;
    }
  }
  for (auto& [id, entry] : breakdown.per_module) {
    entry.subtotal = entry.count * scenario.catalog.at(id).cost;
    breakdown.acquisition += entry.subtotal;
  }
  breakdown.continuous_rate_per_month = continuous_running_cost(
      scenario.catalog, static_cast<int>(layout.robot_count()),
      {active_types.begin(), active_types.end()});
  return breakdown;
}

}  // namespace coldspare
