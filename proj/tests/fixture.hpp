#pragma once

// Test scenarios built directly in code, so the math suites do not depend on
// the JSON loader. six_robot_team() mirrors fixtures/team6.json exactly;
// test_scenario_io cross-checks that the two stay in sync.

#include <vector>

#include "coldspare/types.hpp"

namespace coldspare::testing {

inline Catalog six_robot_catalog() {
  std::vector<ModuleTypeSpec> entries;
  const double rates[] = {0.0031, 0.0032, 0.0034, 0.0050, 0.0052, 0.0057,
                          0.0034, 0.0036, 0.0037, 0.0021, 0.0022, 0.0023,
                          0.0012, 0.0013, 0.0016, 0.0076, 0.0077, 0.0079};
  const double costs[] = {2000, 2300, 2400, 200,  230,  280, 400, 420, 450,
                          300,  310,  360,  1600, 1700, 1900, 800, 820, 870};
  const Role roles[] = {Role::Platform,     Role::Battery,   Role::Processor,
                        Role::Manipulator,  Role::Communication,
                        Role::ActiveProtection};
  for (int i = 0; i < 18; ++i)
    entries.push_back({i + 1, roles[i / 3], rates[i], costs[i], 0.98, 0.98,
                       costs[i]});
  return Catalog(std::move(entries));
}

inline RobotBlueprint blueprint(std::vector<int> modules, int free_slots,
                                int slot_capacity = 6, int type_index = 1) {
  RobotBlueprint bp;
  bp.type_index = type_index;
  bp.active_modules = std::move(modules);
  bp.free_slots = free_slots;
  bp.slot_capacity = slot_capacity;
  return bp;
}

inline TeamScenario six_robot_team() {
  TeamScenario scenario;
  scenario.catalog = six_robot_catalog();
  scenario.blueprints = {blueprint({1, 4, 7, 10}, 2), blueprint({1, 3, 8, 16}, 2),
                         blueprint({1, 5, 8}, 3),     blueprint({1, 4, 7}, 3),
                         blueprint({2}, 5),           blueprint({3, 9}, 4)};
  scenario.counts = {1, 1, 1, 1, 1, 1};
  scenario.horizon_months = 60.0;
  scenario.requirement = FunctionalRequirement::minimal();
  return scenario;
}

/// One robot, one active module, `free_slots` spare slots.
inline TeamScenario single_module_team(double rate, double p_self, double p_other,
                                       int free_slots, double horizon,
                                       double cost = 100.0,
                                       double maintenance = 100.0) {
  TeamScenario scenario;
  scenario.catalog =
      Catalog({{1, Role::Platform, rate, cost, p_self, p_other, maintenance}});
  scenario.blueprints = {blueprint({1}, free_slots, 1 + free_slots)};
  scenario.counts = {1};
  scenario.horizon_months = horizon;
  scenario.requirement = FunctionalRequirement::minimal();
  return scenario;
}

}  // namespace coldspare::testing
