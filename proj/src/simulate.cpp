#include "coldspare/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>

#include "coldspare/rng.hpp"

namespace coldspare {

StorageMode storage_mode_from_string(const std::string& name) {
  if (name == "shared") return StorageMode::Shared;
  if (name == "per_robot" || name == "per-robot") return StorageMode::PerRobot;
  throw ConfigError("unknown storage mode \"" + name + "\"");
}

std::string to_string(StorageMode mode) {
  return mode == StorageMode::Shared ? "shared" : "per_robot";
}

void validate_sim_config(const SimConfig& config) {
  if (config.trials < 1) throw DomainError("trials must be >= 1");
  if (!(config.horizon_months >= 0.0))
    throw DomainError("horizon_months must be >= 0");
}

namespace {

struct ChainState {
  int module_id = 0;
  double failure_rate = 0.0;
  double gate_probability = 0.0;
  bool alive = true;
  bool gate_drawn = false;
  bool gate_open = false;
};

struct PendingFailure {
  double months;
  std::size_t robot;
  std::size_t chain;

  bool operator>(const PendingFailure& other) const {
    if (months != other.months) return months > other.months;
    if (robot != other.robot) return robot > other.robot;
    return chain > other.chain;
  }
};

/// Tracks whether the functional requirement still holds as robots drop out.
class RequirementTracker {
 public:
  RequirementTracker(const TeamScenario& scenario, const TeamLayout& layout)
      : kind_(scenario.requirement.kind) {
    group_of_.resize(layout.robot_count());
    alive_in_group_.reserve(layout.groups.size());
    for (std::size_t g = 0; g < layout.groups.size(); ++g) {
      for (std::size_t j : layout.groups[g].second) group_of_[j] = g;
      alive_in_group_.push_back(static_cast<int>(layout.groups[g].second.size()));
      min_alive_.push_back(
          kind_ == FunctionalRequirement::Kind::Full
              ? static_cast<int>(layout.groups[g].second.size())
              : kind_ == FunctionalRequirement::Kind::Minimal
                  ? 1
                  : scenario.requirement.thresholds[g]);
    }
  }

  /// Returns true if this death breaks the requirement.
  bool robot_down(std::size_t robot) {
    const std::size_t g = group_of_[robot];
    return --alive_in_group_[g] < min_alive_[g];
  }

 private:
  FunctionalRequirement::Kind kind_;
  std::vector<std::size_t> group_of_;
  std::vector<int> alive_in_group_;
  std::vector<int> min_alive_;
};

}  // namespace

TrialOutcome simulate_trial(const TeamScenario& scenario,
                            const RedundancyMap& redundancy, const SimConfig& config,
                            std::uint64_t trial_index) {
  validate_sim_config(config);
  const TeamLayout layout = team_layout(scenario);
  if (redundancy.robot_count() != layout.robot_count())
    throw ConfigError("redundancy map does not match team size");

  Rng rng(trial_seed(config.rng_seed, trial_index));

  const bool shared = config.storage_mode == StorageMode::Shared;
  std::map<int, long> shared_pool;
  std::vector<std::map<int, long>> own_stock(layout.robot_count());
  for (std::size_t j = 0; j < layout.robot_count(); ++j)
    for (const auto& [id, count] : redundancy.robot_spares(j)) {
      scenario.catalog.at(id);
      if (shared)
        shared_pool[id] += count;
      else
        own_stock[j][id] += count;
    }

  std::vector<std::vector<ChainState>> chains(layout.robot_count());
  std::vector<bool> robot_alive(layout.robot_count(), true);
  std::priority_queue<PendingFailure, std::vector<PendingFailure>,
                      std::greater<PendingFailure>>
      queue;
  for (std::size_t j = 0; j < layout.robot_count(); ++j) {
    const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
    chains[j].reserve(bp.active_modules.size());
    for (int id : bp.active_modules) {
      const ModuleTypeSpec& spec = scenario.catalog.at(id);
      ChainState chain;
      chain.module_id = id;
      chain.failure_rate = spec.failure_rate;
      chain.gate_probability =
          shared ? spec.detect_switch_self : spec.detect_switch_other;
      chains[j].push_back(chain);
      queue.push({rng.exponential(spec.failure_rate), j, chains[j].size() - 1});
    }
  }

  TrialOutcome outcome;
  outcome.survived = true;
  outcome.robot_replacements.assign(layout.robot_count(), {});
  RequirementTracker tracker(scenario, layout);
  bool requirement_broken = false;

  while (!queue.empty()) {
    const PendingFailure event = queue.top();
    queue.pop();
    if (event.months > config.horizon_months) break;
    if (!robot_alive[event.robot]) continue;  // stale clock of a downed robot
    ChainState& chain = chains[event.robot][event.chain];

    outcome.failure_times.push_back(
        {event.months, event.robot, chain.module_id, MaintenanceClass::Corrective});

    if (!chain.gate_drawn) {
      chain.gate_drawn = true;
      chain.gate_open = rng.bernoulli(chain.gate_probability);
    }
    long* stock = nullptr;
    if (chain.gate_open) {
      auto& source = shared ? shared_pool : own_stock[event.robot];
      auto it = source.find(chain.module_id);
      if (it != source.end() && it->second > 0) stock = &it->second;
    }

    if (stock != nullptr) {
      --*stock;
      ++outcome.replacements[chain.module_id];
      ++outcome.robot_replacements[event.robot][chain.module_id];
      queue.push({event.months + rng.exponential(chain.failure_rate), event.robot,
                  event.chain});
      continue;
    }

    chain.alive = false;
    robot_alive[event.robot] = false;
    if (!requirement_broken && tracker.robot_down(event.robot)) {
      requirement_broken = true;
      outcome.survived = false;
      outcome.first_system_failure = event.months;
    }
  }
  return outcome;
}

ReliabilityEstimate estimate_reliability(const TeamScenario& scenario,
                                         const RedundancyMap& redundancy,
                                         const SimConfig& config) {
  validate_sim_config(config);
  validate_scenario(scenario);
  ReliabilityEstimate result;
  result.trials = config.trials;
  for (long t = 0; t < config.trials; ++t)
    if (simulate_trial(scenario, redundancy, config, static_cast<std::uint64_t>(t))
            .survived)
      ++result.survivals;
  result.estimate =
      static_cast<double>(result.survivals) / static_cast<double>(result.trials);
  result.std_error = std::sqrt(result.estimate * (1.0 - result.estimate) /
                               static_cast<double>(result.trials));
  return result;
}

double cost_trace(const std::vector<TrialOutcome>& outcomes, const Catalog& catalog,
                  double horizon_months) {
  if (!(horizon_months > 0.0)) throw DomainError("horizon_months must be > 0");
  if (outcomes.empty()) throw DomainError("cost_trace needs at least one trial");
  double total = 0.0;
  for (const TrialOutcome& outcome : outcomes)
    for (const auto& [id, count] : outcome.replacements)
      total += catalog.at(id).maintenance_cost * static_cast<double>(count);
  return total / (static_cast<double>(outcomes.size()) * horizon_months);
}

bool self_repair_feasible(const RoleSet& target) {
  return target.has(Role::Manipulator) && target.has(Role::Battery) &&
         target.has(Role::Processor);
}

bool assisted_repair_feasible(const RoleSet& helper) {
  return helper.has(Role::Platform) && helper.has(Role::Battery) &&
         helper.has(Role::Processor) && helper.has(Role::Manipulator);
}

bool repair_feasible(const RoleSet& helper, const RoleSet& target) {
  if (!assisted_repair_feasible(helper)) return false;
  // a target that cannot broadcast liveliness is caught by silence detection,
  // and a qualified helper is by definition a functioning observer
  const bool broadcasts = target.has(Role::Communication) && target.has(Role::Processor);
  const bool silent = !broadcasts;
  return broadcasts || silent;
}

namespace {

struct FailurePosition {
  std::size_t robot;
  int module_id;
  Role role;
};

/// Static recoverability of one simultaneous-failure set.
class RobustnessCheck {
 public:
  RobustnessCheck(const TeamScenario& scenario, const TeamLayout& layout,
                  const RedundancyMap& redundancy, StorageMode mode)
      : scenario_(scenario), redundancy_(redundancy), mode_(mode) {
    for (std::size_t j = 0; j < layout.robot_count(); ++j) {
      const RobotBlueprint& bp = scenario.blueprints[layout.blueprint_of[j]];
      role_counts_.emplace_back();
      for (int id : bp.active_modules) {
        const ModuleTypeSpec& spec = scenario.catalog.at(id);
        positions_.push_back({j, id, spec.role});
        ++role_counts_.back()[static_cast<std::size_t>(spec.role)];
      }
    }
  }

  const std::vector<FailurePosition>& positions() const { return positions_; }

  bool recoverable(const std::vector<std::size_t>& failed) const {
    // spare stock of the right type must be reachable
    std::map<int, long> team_needs;
    std::map<std::pair<std::size_t, int>, long> robot_needs;
    for (std::size_t p : failed) {
      const FailurePosition& pos = positions_[p];
      ++team_needs[pos.module_id];
      ++robot_needs[{pos.robot, pos.module_id}];
    }
    if (mode_ == StorageMode::Shared) {
      for (const auto& [id, need] : team_needs)
        if (need > redundancy_.team_spares(id)) return false;
    } else {
      for (const auto& [key, need] : robot_needs)
        if (need > redundancy_.spares_of(key.first, key.second)) return false;
    }

    // post-failure role availability
    std::vector<std::array<int, kRoleCount>> counts = role_counts_;
    for (std::size_t p : failed)
      --counts[positions_[p].robot][static_cast<std::size_t>(positions_[p].role)];
    std::vector<RoleSet> roles(counts.size());
    for (std::size_t j = 0; j < counts.size(); ++j)
      for (int r = 0; r < kRoleCount; ++r)
        if (counts[j][static_cast<std::size_t>(r)] > 0)
          roles[j].set(static_cast<Role>(r));
    std::vector<std::size_t> helpers;
    for (std::size_t j = 0; j < roles.size(); ++j)
      if (assisted_repair_feasible(roles[j])) helpers.push_back(j);

    for (std::size_t p : failed) {
      const FailurePosition& pos = positions_[p];
      const ModuleTypeSpec& spec = scenario_.catalog.at(pos.module_id);
      if (self_repair_feasible(roles[pos.robot]) && spec.detect_switch_self > 0.0)
        continue;
      bool assisted = false;
      if (spec.detect_switch_other > 0.0)
        for (std::size_t h : helpers)
          if (h != pos.robot && repair_feasible(roles[h], roles[pos.robot])) {
            assisted = true;
            break;
          }
      if (!assisted) return false;
    }
    return true;
  }

 private:
  const TeamScenario& scenario_;
  const RedundancyMap& redundancy_;
  StorageMode mode_;
  std::vector<FailurePosition> positions_;
  std::vector<std::array<int, kRoleCount>> role_counts_;
};

}  // namespace

int estimate_robustness_level(const TeamScenario& scenario,
                              const RedundancyMap& redundancy, const SimConfig& config,
                              std::uint64_t exhaustive_ceiling) {
  validate_sim_config(config);
  validate_scenario(scenario);
  const TeamLayout layout = team_layout(scenario);
  if (redundancy.robot_count() != layout.robot_count())
    throw ConfigError("redundancy map does not match team size");

  const RobustnessCheck check(scenario, layout, redundancy, config.storage_mode);
  const std::size_t m = check.positions().size();

  for (std::size_t k = 1; k <= m; ++k) {
    // C(m, k) with early cutoff against the ceiling
    double sets = 1.0;
    for (std::size_t i = 0; i < k; ++i) sets *= static_cast<double>(m - i) / (i + 1);
    const bool exhaustive = sets <= static_cast<double>(exhaustive_ceiling);

    bool all_recoverable = true;
    if (exhaustive) {
      std::vector<std::size_t> combo(k);
      for (std::size_t i = 0; i < k; ++i) combo[i] = i;
      while (true) {
        if (!check.recoverable(combo)) {
          all_recoverable = false;
          break;
        }
        // next combination
        std::size_t i = k;
        while (i > 0 && combo[i - 1] == m - k + (i - 1)) --i;
        if (i == 0) break;
        ++combo[i - 1];
        for (std::size_t j = i; j < k; ++j) combo[j] = combo[j - 1] + 1;
      }
    } else {
      Rng rng(trial_seed(config.rng_seed, 0x524f4255ULL + k));
      std::vector<std::size_t> indices(m);
      for (std::size_t i = 0; i < m; ++i) indices[i] = i;
      std::vector<std::size_t> combo(k);
      for (long t = 0; t < config.trials && all_recoverable; ++t) {
        for (std::size_t i = 0; i < k; ++i)
          std::swap(indices[i], indices[i + rng.index(m - i)]);
        combo.assign(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(k));
        if (!check.recoverable(combo)) all_recoverable = false;
      }
    }
    if (!all_recoverable) return static_cast<int>(k) - 1;
  }
  return static_cast<int>(m);
}

}  // namespace coldspare
