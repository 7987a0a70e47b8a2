#pragma once

#include <vector>

#include "coldspare/types.hpp"

namespace coldspare {

/// Survival probability over `months` of one module backed by `spares` cold
/// standby units of the same type. Failures of the running unit follow a
/// Poisson process with the given monthly rate; a single detection/switch
/// success event (probability switch_probability) gates the whole standby
/// chain:
///
///   R = e^{-lt} + p * sum_{k=1..spares} e^{-lt} (lt)^k / k!,  lt = rate*months
///
/// Terms are accumulated by the recurrence term_{k+1} = term_k * lt/(k+1);
/// no factorials or powers are formed explicitly.
double module_reliability(double failure_rate, double months, int spares,
                          double switch_probability);

/// module_reliability with guaranteed switching; equals the Poisson CDF with
/// mean rate*months evaluated at `spares`.
double perfect_switch_reliability(double failure_rate, double months, int spares);

/// Which detection/switch probability a formula family uses.
enum class SwitchSource {
  SelfDirected,  // detect_switch_self: the robot services itself
  Assisted,      // detect_switch_other: another robot performs the swap
};

/// Series survival of one robot: product of module_reliability over its
/// active modules, each with the spare count recorded for this robot.
/// Uses detect_switch_self.
double robot_reliability(const RobotBlueprint& blueprint,
                         const std::map<int, int>& spares, const Catalog& catalog,
                         double months);

/// Product of per-role reliabilities demanded by a capability. A role is
/// covered by the active modules carrying it (several modules of one role
/// multiply in series, matching the robot-level series structure). Throws
/// ConfigError if the blueprint lacks a required role.
double capability_reliability(const RobotBlueprint& blueprint,
                              const std::map<int, int>& spares,
                              const Catalog& catalog, double months,
                              Capability capability);

/// P(at least min_successes of the independent events with the given
/// probabilities occur). Exact dynamic program, O(n^2).
double poisson_binomial_tail(const std::vector<double>& probs, int min_successes);

/// Per-instance robot reliabilities for a team, in instance order.
std::vector<double> per_robot_reliabilities(const TeamScenario& scenario,
                                            const TeamLayout& layout,
                                            const RedundancyMap& redundancy,
                                            double months, SwitchSource source);

/// Combine per-instance reliabilities under a functional requirement.
/// Full: every robot survives. Minimal: in each group at least one survives.
/// Partial: in group g at least thresholds[g] survive (Poisson-binomial tail,
/// exact for heterogeneous redundancy; reduces to the binomial closed form
/// when the group's robots are identical).
double requirement_reliability(const FunctionalRequirement& requirement,
                               const TeamLayout& layout,
                               const std::vector<double>& robot_reliabilities);

/// Team survival under the scenario's requirement with per-robot dedicated
/// spares and self-directed switching.
double team_reliability(const TeamScenario& scenario,
                        const RedundancyMap& redundancy, double months);

/// How a robot's own-storage module reliabilities combine into a team value.
enum class OwnStorageForm {
  /// Series modules per robot, then the scenario requirement across robots
  /// (the same structure team_reliability uses). Default.
  SeriesByRequirement,
  /// Modules combined in parallel within each robot, robots in series.
  /// Kept selectable for comparison; it contradicts the series capability
  /// structure and has no simulation counterpart.
  RobotParallel,
};

/// Team survival when every robot services itself from its own storage shed:
/// per-module reliability uses the robot's own spare count and
/// detect_switch_other.
double team_reliability_own_storage(const TeamScenario& scenario,
                                    const RedundancyMap& storage, double months,
                                    OwnStorageForm form = OwnStorageForm::SeriesByRequirement);

}  // namespace coldspare
