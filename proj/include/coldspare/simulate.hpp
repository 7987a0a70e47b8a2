#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "coldspare/types.hpp"

namespace coldspare {

/// Where failed modules draw their replacement from.
enum class StorageMode {
  Shared,    // one team-level pool per module type, any robot may draw
  PerRobot,  // each robot owns its stock and services itself
};

StorageMode storage_mode_from_string(const std::string& name);
std::string to_string(StorageMode mode);

struct SimConfig {
  long trials = 100000;
  std::uint64_t rng_seed = 1;
  double horizon_months = 0.0;
  StorageMode storage_mode = StorageMode::PerRobot;
};

void validate_sim_config(const SimConfig& config);

enum class MaintenanceClass { Corrective };

struct FailureEvent {
  double months = 0.0;
  std::size_t robot = 0;
  int module_id = 0;
  MaintenanceClass maintenance = MaintenanceClass::Corrective;
};

struct TrialOutcome {
  bool survived = false;                         // requirement held to the horizon
  std::optional<double> first_system_failure;    // months, if the requirement broke
  std::vector<FailureEvent> failure_times;       // every module failure, in order
  std::map<int, long> replacements;              // successful swaps per module id
  std::vector<std::map<int, long>> robot_replacements;  // the same, per robot
};

/// One random mission. Every active module runs an exponential failure clock;
/// a module's first failure draws its detection/switch gate once
/// (detect_switch_self in Shared mode, detect_switch_other in PerRobot mode)
/// and while the gate is open each failure consumes one spare of the same
/// type from the mode's stock with zero swap time. A failure with no gate or
/// no stock downs the module and with it the robot; a downed robot's other
/// clocks stop. Deterministic in (rng_seed, trial_index) regardless of how
/// trials are scheduled.
TrialOutcome simulate_trial(const TeamScenario& scenario,
                            const RedundancyMap& redundancy, const SimConfig& config,
                            std::uint64_t trial_index);

struct ReliabilityEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long trials = 0;
  long survivals = 0;
};

/// Survival frequency over config.trials missions with binomial standard
/// error. PerRobot mode is the exact counterpart of
/// team_reliability_own_storage; Shared mode pools spares, which no closed
/// form covers exactly (pooling only helps, so it upper-bounds the dedicated
/// value at identical totals).
ReliabilityEstimate estimate_reliability(const TeamScenario& scenario,
                                         const RedundancyMap& redundancy,
                                         const SimConfig& config);

/// Corrective-maintenance spend per month averaged over the given trials.
double cost_trace(const std::vector<TrialOutcome>& outcomes, const Catalog& catalog,
                  double horizon_months);

/// Functioning roles of one robot (derived from its surviving active modules).
struct RoleSet {
  std::array<bool, kRoleCount> present{};

  bool has(Role role) const { return present[static_cast<std::size_t>(role)]; }
  void set(Role role, bool value = true) {
    present[static_cast<std::size_t>(role)] = value;
  }
};

/// A robot can service itself while its own manipulator, battery and
/// processor still function.
bool self_repair_feasible(const RoleSet& target);

/// A helper needs platform, battery, processor and manipulator to reach and
/// service another robot.
bool assisted_repair_feasible(const RoleSet& helper);

/// Whether `helper` can repair `target`: the helper must qualify and the
/// target must be detectable, either by broadcasting liveliness
/// (communication + processor) or by the helper noticing its total silence.
bool repair_feasible(const RoleSet& helper, const RoleSet& target);

/// Largest k such that every simultaneous failure of up to k active modules
/// can be detected and repaired: spares of the right types are reachable
/// under the storage mode and every failed module has a feasible repair chain
/// (self or assisted, with a positive switch probability), judged on the
/// post-failure capability graph with no repair ordering. Failure sets are
/// checked exhaustively while their count stays at or below
/// exhaustive_ceiling, otherwise config.trials random sets are sampled per
/// level (deterministic in rng_seed).
int estimate_robustness_level(const TeamScenario& scenario,
                              const RedundancyMap& redundancy, const SimConfig& config,
                              std::uint64_t exhaustive_ceiling = 200000);

}  // namespace coldspare
