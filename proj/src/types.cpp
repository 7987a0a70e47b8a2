#include "coldspare/types.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace coldspare {

Role role_from_string(const std::string& name) {
  if (name == "platform") return Role::Platform;
  if (name == "battery") return Role::Battery;
  if (name == "processor") return Role::Processor;
  if (name == "manipulator") return Role::Manipulator;
  if (name == "communication") return Role::Communication;
  if (name == "active_protection") return Role::ActiveProtection;
  throw ConfigError("unknown role \"" + name + "\"");
}

std::string to_string(Role role) {
  switch (role) {
    case Role::Platform: return "platform";
    case Role::Battery: return "battery";
    case Role::Processor: return "processor";
    case Role::Manipulator: return "manipulator";
    case Role::Communication: return "communication";
    case Role::ActiveProtection: return "active_protection";
  }
  throw DomainError("invalid role value");
}

const std::vector<Role>& capability_roles(Capability cap) {
  static const std::vector<Role> primary = {
      Role::Platform,     Role::Battery,       Role::Processor,
      Role::Manipulator,  Role::Communication, Role::ActiveProtection};
  static const std::vector<Role> report = {Role::Communication, Role::Processor};
  static const std::vector<Role> move_manipulate = {Role::Platform, Role::Battery,
                                                    Role::Processor};
  static const std::vector<Role> manipulate = {Role::Battery, Role::Manipulator};
  switch (cap) {
    case Capability::Primary: return primary;
    case Capability::Report: return report;
    case Capability::MoveManipulate: return move_manipulate;
    case Capability::Manipulate: return manipulate;
  }
  throw DomainError("invalid capability value");
}

std::string to_string(Capability cap) {
  switch (cap) {
    case Capability::Primary: return "primary";
    case Capability::Report: return "report";
    case Capability::MoveManipulate: return "move_manipulate";
    case Capability::Manipulate: return "manipulate";
  }
  throw DomainError("invalid capability value");
}

std::string to_string(const FunctionalRequirement& req) {
  switch (req.kind) {
    case FunctionalRequirement::Kind::Full: return "full";
    case FunctionalRequirement::Kind::Minimal: return "minimal";
    case FunctionalRequirement::Kind::Partial: {
      std::ostringstream out;
      out << "partial(";
      for (std::size_t i = 0; i < req.thresholds.size(); ++i) {
        if (i) out << ",";
        out << req.thresholds[i];
      }
      out << ")";
      return out.str();
    }
  }
  throw DomainError("invalid requirement kind");
}

Catalog::Catalog(std::vector<ModuleTypeSpec> entries) : entries_(std::move(entries)) {
  for (std::size_t n = 0; n < entries_.size(); ++n) {
    const ModuleTypeSpec& m = entries_[n];
    const std::string where = "catalog module id " + std::to_string(m.id);
    if (m.id <= 0) throw ConfigError(where + ": id must be a positive integer");
    if (!index_.emplace(m.id, n).second)
      throw ConfigError(where + ": duplicate id");
    if (!(m.failure_rate > 0.0))
      throw DomainError(where + ": failure_rate must be > 0");
    if (!(m.cost >= 0.0)) throw DomainError(where + ": cost must be >= 0");
    if (!(m.detect_switch_self >= 0.0 && m.detect_switch_self <= 1.0))
      throw DomainError(where + ": detect_switch_self must be in [0,1]");
    if (!(m.detect_switch_other >= 0.0 && m.detect_switch_other <= 1.0))
      throw DomainError(where + ": detect_switch_other must be in [0,1]");
    if (!(m.maintenance_cost >= 0.0))
      throw DomainError(where + ": maintenance_cost must be >= 0");
  }
}

const ModuleTypeSpec& Catalog::at(int id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw ConfigError("unknown module id " + std::to_string(id));
  return entries_[it->second];
}

TeamLayout team_layout(const TeamScenario& scenario) {
  if (scenario.blueprints.size() != scenario.counts.size())
    throw ConfigError("counts must list one entry per blueprint");
  TeamLayout layout;
  std::map<int, std::vector<std::size_t>> groups;
  std::size_t gene = 0;
  for (std::size_t b = 0; b < scenario.blueprints.size(); ++b) {
    const RobotBlueprint& bp = scenario.blueprints[b];
    for (int c = 0; c < scenario.counts[b]; ++c) {
      const std::size_t instance = layout.blueprint_of.size();
      layout.blueprint_of.push_back(b);
      layout.gene_span.emplace_back(gene, gene + static_cast<std::size_t>(bp.free_slots));
      gene += static_cast<std::size_t>(bp.free_slots);
      groups[bp.type_index].push_back(instance);
    }
  }
  layout.gene_count = gene;
  layout.groups.assign(groups.begin(), groups.end());
  return layout;
}

void validate_scenario(const TeamScenario& scenario) {
  if (scenario.catalog.empty()) throw ConfigError("catalog: must not be empty");
  if (scenario.blueprints.empty()) throw ConfigError("robots: must not be empty");
  if (scenario.blueprints.size() != scenario.counts.size())
    throw ConfigError("counts: must list one entry per robot blueprint");
  if (!(scenario.horizon_months >= 0.0))
    throw DomainError("horizon_months: must be >= 0");

  for (std::size_t b = 0; b < scenario.blueprints.size(); ++b) {
    const RobotBlueprint& bp = scenario.blueprints[b];
    const std::string where = "robots[" + std::to_string(b) + "]";
    if (bp.type_index <= 0)
      throw ConfigError(where + ".type_index: must be a positive integer");
    if (bp.free_slots < 0) throw ConfigError(where + ".free_slots: must be >= 0");
    if (bp.slot_capacity < 0)
      throw ConfigError(where + ".total_slots: must be >= 0");
    if (static_cast<int>(bp.active_modules.size()) + bp.free_slots > bp.slot_capacity)
      throw ConfigError(where + ": active modules plus free slots exceed total_slots");
    std::set<int> seen;
    for (int id : bp.active_modules) {
      if (!scenario.catalog.contains(id))
        throw ConfigError(where + ".modules: unknown module id " + std::to_string(id));
      // One standby chain per module type per robot; a duplicate active id
      // would make the per-type spare count ambiguous.
      if (!seen.insert(id).second)
        throw ConfigError(where + ".modules: module id " + std::to_string(id) +
                          " listed twice on one robot");
    }
    for (const auto& [id, limit] : bp.per_type_limits) {
      if (!scenario.catalog.contains(id))
        throw ConfigError(where + ".limits: unknown module id " + std::to_string(id));
      if (limit < 0)
        throw ConfigError(where + ".limits: limit for module id " +
                          std::to_string(id) + " must be >= 0");
    }
    if (scenario.counts[b] < 0)
      throw ConfigError("counts[" + std::to_string(b) + "]: must be >= 0");
  }

  for (const auto& [id, limit] : scenario.shared_type_limits) {
    if (!scenario.catalog.contains(id))
      throw ConfigError("limits: unknown module id " + std::to_string(id));
    if (limit < 0)
      throw ConfigError("limits: limit for module id " + std::to_string(id) +
                        " must be >= 0");
  }

  const TeamLayout layout = team_layout(scenario);
  if (layout.robot_count() == 0)
    throw ConfigError("counts: team must contain at least one robot");

  if (scenario.requirement.kind == FunctionalRequirement::Kind::Partial) {
    if (scenario.requirement.thresholds.size() != layout.groups.size())
      throw ConfigError("requirement.partial: expected " +
                        std::to_string(layout.groups.size()) +
                        " thresholds (one per group)");
    for (std::size_t g = 0; g < layout.groups.size(); ++g) {
      const int m = scenario.requirement.thresholds[g];
      const int size = static_cast<int>(layout.groups[g].second.size());
      if (m < 1 || m > size)
        throw ConfigError("requirement.partial: threshold for group " +
                          std::to_string(layout.groups[g].first) +
                          " must be in [1," + std::to_string(size) + "]");
    }
  } else if (!scenario.requirement.thresholds.empty()) {
    throw ConfigError("requirement: thresholds only apply to partial");
  }
}

int RedundancyMap::spares_of(std::size_t robot, int id) const {
  if (robot >= spares_.size())
    throw ConfigError("robot index " + std::to_string(robot) + " out of range");
  const auto& m = spares_[robot];
  auto it = m.find(id);
  return it == m.end() ? 0 : it->second;
}

void RedundancyMap::set_spares(std::size_t robot, int id, int count) {
  if (robot >= spares_.size())
    throw ConfigError("robot index " + std::to_string(robot) + " out of range");
  if (count < 0) throw DomainError("spare count must be >= 0");
  if (count == 0)
    spares_[robot].erase(id);
  else
    spares_[robot][id] = count;
}

long RedundancyMap::team_spares(int id) const {
  long total = 0;
  for (const auto& robot : spares_) {
    auto it = robot.find(id);
    if (it != robot.end()) total += it->second;
  }
  return total;
}

long RedundancyMap::robot_total(std::size_t robot) const {
  if (robot >= spares_.size())
    throw ConfigError("robot index " + std::to_string(robot) + " out of range");
  long total = 0;
  for (const auto& [id, count] : spares_[robot]) total += count;
  return total;
}

const std::map<int, int>& RedundancyMap::robot_spares(std::size_t robot) const {
  if (robot >= spares_.size())
    throw ConfigError("robot index " + std::to_string(robot) + " out of range");
  return spares_[robot];
}

}  // namespace coldspare
